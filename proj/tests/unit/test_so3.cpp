#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rotavg/so3.hpp"

using namespace rotavg;

namespace {

constexpr double kPi = std::numbers::pi;

Mat3 skew(const Vec3& u) {
  Mat3 s;
  s << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
  return s;
}

// Independent route: Rodrigues cross-product form.
Mat3 rodrigues(const Vec3& u, double theta) {
  return std::cos(theta) * Mat3::Identity() + std::sin(theta) * skew(u) +
         (1.0 - std::cos(theta)) * u * u.transpose();
}

Mat3 random_entries(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat3 a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = gauss(rng);
  return a;
}

}  // namespace

TEST_CASE("axis_angle_to_rotation: zero angle gives the identity") {
  const Mat3 r = axis_angle_to_rotation({Vec3(0.6, 0.8, 0.0).normalized(), 0.0});
  CHECK((r - Mat3::Identity()).norm() == 0.0);
}

TEST_CASE("axis_angle_to_rotation: half turn about z") {
  const Mat3 r = axis_angle_to_rotation({Vec3::UnitZ(), kPi});
  Mat3 expected;
  expected << -1, 0, 0, 0, -1, 0, 0, 0, 1;
  CHECK((r - expected).norm() < 1e-15);
}

TEST_CASE("axis_angle_to_rotation: matches the Rodrigues form") {
  const Vec3 u = Vec3::UnitX();
  const Mat3 r = axis_angle_to_rotation({u, kPi / 3});
  CHECK((r - rodrigues(u, kPi / 3)).norm() < 1e-15);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int k = 0; k < 200; ++k) {
    Vec3 axis = Vec3(random_entries(rng).col(0)).normalized();
    const double theta = angle(rng);
    const Mat3 got = axis_angle_to_rotation({axis, theta});
    CHECK((got - rodrigues(axis, theta)).norm() < 1e-14);
    CHECK(is_rotation(got));
  }
}

TEST_CASE("axis_angle_to_rotation: non-unit axis rejected unless angle is zero") {
  CHECK_THROWS_AS(axis_angle_to_rotation({Vec3(1, 1, 0), 0.3}), std::invalid_argument);
  CHECK_NOTHROW(axis_angle_to_rotation({Vec3(1, 1, 0), 0.0}));
}

TEST_CASE("rotation_to_nearest_valid: exact rotation is a fixed point") {
  std::mt19937_64 rng(5);
  const Mat3 r = random_rotation_uniform(rng);
  CHECK((rotation_to_nearest_valid(r) - r).norm() < 1e-14);
}

TEST_CASE("rotation_to_nearest_valid: strips a scale factor") {
  const Mat3 m = (1.0 + 1e-8) * Mat3::Identity();
  CHECK((rotation_to_nearest_valid(m) - Mat3::Identity()).norm() < 1e-14);
}

TEST_CASE("rotation_to_nearest_valid: agrees with the LOSSO route on noisy input") {
  // nearest rotation maximizes tr(m^T X), i.e. minimizes tr(-m^T X)
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const Mat3 r = random_rotation_uniform(rng);
    const Mat3 noisy = r + 1e-6 * random_entries(rng);
    const Mat3 projected = rotation_to_nearest_valid(noisy);
    CHECK((projected - r).norm() < 1e-5);
    const Mat3 via_losso = solve_losso(-noisy.transpose()).x;
    CHECK((projected - via_losso).norm() < 1e-9);
  }
}

TEST_CASE("rotation_to_nearest_valid: rejects input far from SO(3)") {
  CHECK_THROWS_AS(rotation_to_nearest_valid(Mat3::Zero()), std::invalid_argument);
  Mat3 reflection = Mat3::Identity();
  reflection(2, 2) = -1.0;
  CHECK_THROWS_AS(rotation_to_nearest_valid(reflection), std::invalid_argument);
}

TEST_CASE("random_rotation: zero stddev gives the identity") {
  std::mt19937_64 rng(3);
  CHECK((random_rotation(rng, 0.0) - Mat3::Identity()).norm() == 0.0);
}

TEST_CASE("random_rotation: deterministic given the seed") {
  std::mt19937_64 a(42), b(42);
  for (int k = 0; k < 10; ++k) {
    CHECK((random_rotation(a, 0.3) - random_rotation(b, 0.3)).norm() == 0.0);
  }
  std::mt19937_64 c(42), d(42);
  CHECK((random_rotation_uniform(c) - random_rotation_uniform(d)).norm() == 0.0);
}

TEST_CASE("random_rotation: mean absolute angle matches the half-normal law") {
  // E|theta| = stddev * sqrt(2/pi)
  const double stddev = 0.2;
  const int samples = 100000;
  std::mt19937_64 rng(2024);
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Mat3 r = random_rotation(rng, stddev);
    const double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
    const double angle = std::acos(c);
    sum += angle;
    sum_sq += angle * angle;
  }
  const double mean = sum / samples;
  const double expected = stddev * std::sqrt(2.0 / kPi);
  const double stderr_est =
      std::sqrt((sum_sq / samples - mean * mean) / samples);
  CHECK(std::abs(mean - expected) < 3.0 * stderr_est);
}

TEST_CASE("chordal_sq: examples and trace identity") {
  std::mt19937_64 rng(1);
  const Mat3 r = random_rotation_uniform(rng);
  CHECK(chordal_sq(r, r) == 0.0);

  Mat3 half_turn;
  half_turn << -1, 0, 0, 0, -1, 0, 0, 0, 1;
  CHECK(chordal_sq(Mat3::Identity(), half_turn) == doctest::Approx(8.0).epsilon(1e-15));

  const double eps_angle = 0.37;
  const Mat3 small = axis_angle_to_rotation({Vec3::UnitY(), eps_angle});
  const double expected = 8.0 * std::pow(std::sin(eps_angle / 2), 2);
  CHECK(chordal_sq(Mat3::Identity(), small) == doctest::Approx(expected).epsilon(1e-12));

  for (int k = 0; k < 100; ++k) {
    const Mat3 a = random_rotation_uniform(rng);
    const Mat3 b = random_rotation_uniform(rng);
    const double direct = chordal_sq(a, b);
    const double via_trace = 6.0 - 2.0 * (a.transpose() * b).trace();
    CHECK(std::abs(direct - via_trace) < tol::kAlgebraic);
  }
}

TEST_CASE("solve_losso: closed-form examples") {
  const auto neg_identity = solve_losso(-Mat3::Identity());
  CHECK((neg_identity.x - Mat3::Identity()).norm() < 1e-14);
  CHECK(neg_identity.value == doctest::Approx(-3.0).epsilon(1e-14));

  const auto identity_cost = solve_losso(Mat3::Identity());
  CHECK(identity_cost.value == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(is_rotation(identity_cost.x));

  const auto zero = solve_losso(Mat3::Zero());
  CHECK((zero.x - Mat3::Identity()).norm() == 0.0);
  CHECK(zero.value == 0.0);

  Mat3 nan_cost = Mat3::Identity();
  nan_cost(1, 1) = std::nan("");
  CHECK_THROWS_AS(solve_losso(nan_cost), NumericalError);
}

TEST_CASE("solve_losso: beats random rotations and stays feasible") {
  std::mt19937_64 rng(99);
  RotationStack pool(1000);
  for (Mat3& y : pool) y = random_rotation_uniform(rng);
  for (int k = 0; k < 1000; ++k) {
    const Mat3 a = random_entries(rng);
    const auto [x, value] = solve_losso(a);
    CHECK(is_rotation(x));
    CHECK(std::abs((a * x).trace() - value) < 1e-12);
    for (const Mat3& y : pool) {
      CHECK(value <= (a * y).trace() + tol::kAlgebraic);
    }
  }
}

TEST_CASE("solve_losso: agrees with the grid oracle from above") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const Mat3 a = random_entries(rng);
    const auto closed = solve_losso(a);
    const auto grid = losso_oracle(a, 48);
    CHECK(closed.value <= grid.value + tol::kAlgebraic);
    CHECK(grid.value - closed.value < 12.0 / 48);  // C / resolution
  }
}

TEST_CASE("losso_oracle: known optima and refinement") {
  const auto neg_identity = losso_oracle(-Mat3::Identity(), 64);
  CHECK(std::abs(neg_identity.value - (-3.0)) < 0.05);

  // flip the two largest directions: 1 - 2 - 3 = -4
  const Mat3 diag = Vec3(3.0, 2.0, 1.0).asDiagonal();
  const auto graded = losso_oracle(diag, 64);
  CHECK(std::abs(graded.value - (-4.0)) < 0.05);
  CHECK(solve_losso(diag).value == doctest::Approx(-4.0).epsilon(1e-14));

  std::mt19937_64 rng(23);
  for (int k = 0; k < 5; ++k) {
    const Mat3 a = random_entries(rng);
    CHECK(losso_oracle(a, 32).value <= losso_oracle(a, 16).value + 1e-9);
    CHECK(losso_oracle(a, 64).value <= losso_oracle(a, 32).value + 1e-9);
  }

  CHECK_THROWS_AS(losso_oracle(Mat3::Identity(), 8), std::invalid_argument);
}

TEST_CASE("SVD sign rule: determinant fix keeps the factorization") {
  // After the fix, det(Vhat) * det(U) = 1 and Uhat Dhat Vhat^T still equals A.
  // The fixed diagonal never mixes signs: all entries >= 0 or all <= 0.
  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    const Mat3 a = random_entries(rng);
    Eigen::JacobiSVD<Mat3> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 v_hat = svd.matrixV();
    Vec3 d_hat = svd.singularValues();
    if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) {
      v_hat = -v_hat;
      d_hat = -d_hat;
    }
    CHECK(svd.matrixU().determinant() * v_hat.determinant() ==
          doctest::Approx(1.0).epsilon(1e-12));
    const Mat3 rebuilt = svd.matrixU() * d_hat.asDiagonal() * v_hat.transpose();
    CHECK((rebuilt - a).norm() < tol::kAlgebraic * std::max(1.0, a.norm()));
    const bool all_nonneg = (d_hat.array() >= 0.0).all();
    const bool all_nonpos = (d_hat.array() <= 0.0).all();
    CHECK((all_nonneg || all_nonpos));
  }
}
