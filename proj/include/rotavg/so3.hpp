#pragma once

#include <random>

#include "rotavg/types.hpp"

namespace rotavg {

/// Axis-angle parametrization: unit axis u, angle theta in [-pi, pi].
struct AxisAngle {
  Vec3 axis = Vec3::UnitZ();
  double theta = 0.0;
};

/// True if m is orthogonal with determinant +1 within the given tolerances.
bool is_rotation(const Mat3& m, double orth_tol = tol::kOrthogonality,
                 double det_tol = tol::kDeterminant);

/// The rotation X(u, theta) = cos(t) I + sin(t) [u]x + (1 - cos(t)) u u^T,
/// written out entrywise. Throws std::invalid_argument for a non-unit axis
/// with theta != 0.
Mat3 axis_angle_to_rotation(const AxisAngle& aa);

/// Frobenius-nearest rotation (orthogonal Procrustes projection). Throws
/// std::invalid_argument if the input is further than 0.5 from SO(3).
Mat3 rotation_to_nearest_valid(const Mat3& m);

/// Axis uniform on the unit sphere, angle ~ N(0, angle_stddev^2).
/// angle_stddev = 0 yields the identity exactly.
Mat3 random_rotation(std::mt19937_64& rng, double angle_stddev);

/// Haar-uniform rotation, via a uniform unit quaternion.
Mat3 random_rotation_uniform(std::mt19937_64& rng);

/// Squared chordal distance ||a - b||_F^2 (= 6 - 2 tr(a^T b) on SO(3)).
double chordal_sq(const Mat3& a, const Mat3& b);

struct LossoResult {
  Mat3 x;
  double value;  // tr(a * x) at the returned x
};

/// Global minimizer of tr(a X) over X in SO(3), in closed form:
/// SVD a = U D V^T; if det(U) det(V) = 1, flip the two largest singular
/// directions (X = V diag(+-1) U^T with +1 at the smallest singular value);
/// otherwise X = -V U^T. a = 0 returns the identity.
LossoResult solve_losso(const Mat3& a);

/// Brute-force grid minimizer of tr(a X(u, theta)); independent test oracle
/// for solve_losso. Axes on a Fibonacci sphere (resolution^2 points), angles
/// evenly spaced over [-pi, pi] (resolution points). Requires resolution >= 16.
LossoResult losso_oracle(const Mat3& a, int resolution);

}  // namespace rotavg
