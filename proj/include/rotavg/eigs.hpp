#pragma once

#include "rotavg/types.hpp"

namespace rotavg {

/// Smallest eigenvalue of a symmetric matrix. Dense solve below a size
/// cutoff, Lanczos with full reorthogonalization above it (with a dense
/// fallback if Lanczos stalls). Absolute error <= 1e-6; typically far better.
double smallest_eigenvalue(const Eigen::MatrixXd& m);

/// k smallest eigenvalues in ascending order, computed densely. Intended for
/// moderate dimensions (spectrum diagnostics, tests).
Eigen::VectorXd smallest_eigenvalues(const Eigen::MatrixXd& m, int k);

/// Additive slack applied when a guaranteed lower bound on the smallest
/// eigenvalue is needed (see solve_sum's shift).
inline constexpr double kEigTolerance = 1e-8;

}  // namespace rotavg
