#include "rotavg/so3.hpp"

#include <cmath>
#include <numbers>

namespace rotavg {

bool is_rotation(const Mat3& m, double orth_tol, double det_tol) {
  if (!m.allFinite()) return false;
  return (m.transpose() * m - Mat3::Identity()).norm() <= orth_tol &&
         std::abs(m.determinant() - 1.0) <= det_tol;
}

Mat3 axis_angle_to_rotation(const AxisAngle& aa) {
  const Vec3& u = aa.axis;
  const double theta = aa.theta;
  if (!u.allFinite() || !std::isfinite(theta)) {
    throw std::invalid_argument("axis_angle_to_rotation: non-finite input");
  }
  if (std::abs(u.squaredNorm() - 1.0) > 1e-12 && theta != 0.0) {
    throw std::invalid_argument("axis_angle_to_rotation: axis is not unit length");
  }
  const double c = std::cos(theta);
  const double psi = std::sin(theta);
  const double delta = 1.0 - c;
  const double u1 = u.x(), u2 = u.y(), u3 = u.z();
  Mat3 x;
  x << c + delta * u1 * u1, delta * u1 * u2 - u3 * psi, delta * u1 * u3 + u2 * psi,
      delta * u2 * u1 + u3 * psi, c + delta * u2 * u2, delta * u2 * u3 - u1 * psi,
      delta * u3 * u1 - u2 * psi, delta * u3 * u2 + u1 * psi, c + delta * u3 * u3;
  return x;
}

Mat3 rotation_to_nearest_valid(const Mat3& m) {
  if (!m.allFinite()) {
    throw NumericalError("rotation_to_nearest_valid: non-finite input");
  }
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double sign =
      svd.matrixU().determinant() * svd.matrixV().determinant() > 0.0 ? 1.0 : -1.0;
  const Mat3 r = svd.matrixU() * Vec3(1.0, 1.0, sign).asDiagonal() *
                 svd.matrixV().transpose();
  if ((m - r).norm() > 0.5 + 1e-9) {
    throw std::invalid_argument(
        "rotation_to_nearest_valid: degenerate input, no rotation within 0.5");
  }
  return r;
}

Mat3 random_rotation(std::mt19937_64& rng, double angle_stddev) {
  if (!(angle_stddev >= 0.0)) {
    throw std::invalid_argument("random_rotation: angle_stddev must be >= 0");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double z = 2.0 * unit(rng) - 1.0;
  const double azimuth = 2.0 * std::numbers::pi * unit(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const Vec3 axis(r * std::cos(azimuth), r * std::sin(azimuth), z);
  double theta = 0.0;
  if (angle_stddev > 0.0) {
    std::normal_distribution<double> gauss(0.0, angle_stddev);
    // wrap into [-pi, pi]; the rotation is unchanged
    theta = std::remainder(gauss(rng), 2.0 * std::numbers::pi);
  }
  return axis_angle_to_rotation({axis, theta});
}

Mat3 random_rotation_uniform(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double w, x, y, z, norm;
  do {
    w = gauss(rng);
    x = gauss(rng);
    y = gauss(rng);
    z = gauss(rng);
    norm = std::sqrt(w * w + x * x + y * y + z * z);
  } while (norm < 1e-9);
  w /= norm;
  x /= norm;
  y /= norm;
  z /= norm;
  Mat3 m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return m;
}

double chordal_sq(const Mat3& a, const Mat3& b) {
  return (a - b).squaredNorm();
}

LossoResult solve_losso(const Mat3& a) {
  if (!a.allFinite()) {
    throw NumericalError("solve_losso: non-finite cost matrix");
  }
  if (a.isZero(0.0)) {
    return {Mat3::Identity(), 0.0};  // every rotation is optimal
  }
  Eigen::JacobiSVD<Mat3> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  Mat3 x;
  if (u.determinant() * v.determinant() > 0.0) {
    const Vec3& sigma = svd.singularValues();
    int im = 0;  // smallest singular value; first index on ties
    for (int i = 1; i < 3; ++i) {
      if (sigma[i] < sigma[im]) im = i;
    }
    Vec3 flip = -Vec3::Ones();
    flip[im] = 1.0;
    x = v * flip.asDiagonal() * u.transpose();
  } else {
    // D and V negated: all diagonal costs <= 0, so the inner solution is I
    x = -v * u.transpose();
  }
  return {x, (a * x).trace()};
}

LossoResult losso_oracle(const Mat3& a, int resolution) {
  if (resolution < 16) {
    throw std::invalid_argument("losso_oracle: resolution must be >= 16");
  }
  const int num_axes = resolution * resolution;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double best = std::numeric_limits<double>::infinity();
  Mat3 best_x = Mat3::Identity();
  for (int k = 0; k < num_axes; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / num_axes;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double az = golden * k;
    const Vec3 u(r * std::cos(az), r * std::sin(az), z);
    for (int t = 0; t < resolution; ++t) {
      const double theta =
          -std::numbers::pi + 2.0 * std::numbers::pi * t / (resolution - 1);
      const Mat3 x = axis_angle_to_rotation({u, theta});
      const double value = (a * x).trace();
      if (value < best) {
        best = value;
        best_x = x;
      }
    }
  }
  return {best_x, best};
}

}  // namespace rotavg
