#pragma once

#include "rotavg/graph.hpp"

namespace rotavg {

/// A posteriori optimality check at a stationary point: the solution is
/// globally optimal if Lambda - R~ is positive semidefinite.
struct Certificate {
  double min_eig = 0.0;    // smallest eigenvalue of the symmetrized Lambda - R~
  double asymmetry = 0.0;  // ||M - M^T||_F of the raw matrix; stationarity residual
  bool optimal = false;    // min_eig >= -tol
  double tol = 0.0;
};

/// Block-diagonal Lambda with Lambda_i = sum over neighbors j of
/// R~_ij R_j^T R_i (both stored and transpose-derived directions).
Eigen::MatrixXd build_lambda(const RAGraph& g, const RotationStack& rotations);

/// Raw certificate matrix Lambda - R~, before symmetrization.
Eigen::MatrixXd certificate_matrix(const RAGraph& g, const RotationStack& rotations);

/// Evaluates the certificate. The raw matrix is symmetric only at exact
/// stationary points, so it is symmetrized for the eigenvalue computation and
/// the asymmetry norm is reported separately. tolerance <= 0 selects the
/// default 1e-6 * n.
Certificate certify(const RAGraph& g, const RotationStack& rotations,
                    double tolerance = 0.0);

}  // namespace rotavg
