#include "rotavg/certificate.hpp"

#include "rotavg/eigs.hpp"
#include "rotavg/so3.hpp"

namespace rotavg {

namespace {

void check_feasible(const RAGraph& g, const RotationStack& rotations) {
  if (static_cast<int>(rotations.size()) != g.num_vertices()) {
    throw std::invalid_argument("certificate: stack length does not match graph");
  }
  for (const Mat3& r : rotations) {
    if (!is_rotation(r, tol::kIoRotation, tol::kIoRotation)) {
      throw std::invalid_argument("certificate: stack is not in SO(3)^n");
    }
  }
}

}  // namespace

Eigen::MatrixXd build_lambda(const RAGraph& g, const RotationStack& rotations) {
  check_feasible(g, rotations);
  const int n = g.num_vertices();
  Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (const Edge& e : g.edges()) {
    // Lambda_i sums R~_ij R_j^T R_i over every neighbor j; the reverse
    // direction uses the transposed measurement.
    lambda.block<3, 3>(3 * e.i, 3 * e.i) +=
        e.rel * rotations[e.j].transpose() * rotations[e.i];
    lambda.block<3, 3>(3 * e.j, 3 * e.j) +=
        e.rel.transpose() * rotations[e.i].transpose() * rotations[e.j];
  }
  return lambda;
}

Eigen::MatrixXd certificate_matrix(const RAGraph& g, const RotationStack& rotations) {
  Eigen::MatrixXd m = build_lambda(g, rotations);
  for (const Edge& e : g.edges()) {
    m.block<3, 3>(3 * e.i, 3 * e.j) = -e.rel;
    m.block<3, 3>(3 * e.j, 3 * e.i) = -e.rel.transpose();
  }
  return m;
}

Certificate certify(const RAGraph& g, const RotationStack& rotations,
                    double tolerance) {
  Certificate cert;
  cert.tol = tolerance > 0.0 ? tolerance : 1e-6 * g.num_vertices();
  Eigen::MatrixXd m = certificate_matrix(g, rotations);
  cert.asymmetry = (m - m.transpose()).norm();
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  cert.min_eig = smallest_eigenvalue(sym);
  cert.optimal = cert.min_eig >= -cert.tol;
  return cert;
}

}  // namespace rotavg
