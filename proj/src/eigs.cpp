#include "rotavg/eigs.hpp"

#include <cmath>
#include <random>

namespace rotavg {

namespace {

// Above this dimension the dense solver's cubic cost starts to dominate the
// solvers that call it; switch to Lanczos.
constexpr int kDenseCutoff = 256;

double smallest_eigenvalue_dense(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("smallest_eigenvalue: dense eigensolver failed");
  }
  return solver.eigenvalues()(0);
}

// Plain Lanczos with full reorthogonalization; extreme Ritz values converge
// first, and only the smallest is needed. Returns NaN if the Ritz residual
// never falls below the tolerance.
double smallest_eigenvalue_lanczos(const Eigen::MatrixXd& m) {
  const int dim = static_cast<int>(m.rows());
  const int max_steps = std::min(dim, 240);
  const double scale = std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff());
  const double tolerance = 1e-10 * scale;

  Eigen::MatrixXd basis(dim, max_steps + 1);
  Eigen::VectorXd alpha(max_steps), beta(max_steps);

  std::mt19937_64 rng(0x5eed5eedULL);  // deterministic start vector
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
  v.normalize();
  basis.col(0) = v;

  int steps = 0;
  for (int j = 0; j < max_steps; ++j) {
    Eigen::VectorXd w = m * basis.col(j);
    if (j > 0) w -= beta(j - 1) * basis.col(j - 1);
    alpha(j) = basis.col(j).dot(w);
    w -= alpha(j) * basis.col(j);
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass) {
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    }
    beta(j) = w.norm();
    steps = j + 1;
    if (beta(j) < 1e-13 * scale) break;  // invariant subspace captured
    basis.col(j + 1) = w / beta(j);

    if (steps >= 8 && (steps % 8 == 0 || j == max_steps - 1)) {
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
      for (int i = 0; i < steps; ++i) {
        tri(i, i) = alpha(i);
        if (i + 1 < steps) tri(i, i + 1) = tri(i + 1, i) = beta(i);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
      const int idx = 0;  // ascending order: smallest first
      const double ritz_residual =
          std::abs(beta(steps - 1) * solver.eigenvectors()(steps - 1, idx));
      if (ritz_residual < tolerance) {
        return solver.eigenvalues()(idx);
      }
    }
  }

  // breakdown before the residual check: the Krylov space is exact
  if (steps > 0 && beta(steps - 1) < 1e-13 * scale) {
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
    for (int i = 0; i < steps; ++i) {
      tri(i, i) = alpha(i);
      if (i + 1 < steps) tri(i, i + 1) = tri(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double smallest_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("smallest_eigenvalue: matrix must be square");
  }
  if (!m.allFinite()) {
    throw NumericalError("smallest_eigenvalue: non-finite matrix");
  }
  if (m.rows() <= kDenseCutoff) {
    return smallest_eigenvalue_dense(m);
  }
  const double lanczos = smallest_eigenvalue_lanczos(m);
  if (std::isfinite(lanczos)) {
    return lanczos;
  }
  return smallest_eigenvalue_dense(m);  // stalled; fall back to the exact path
}

Eigen::VectorXd smallest_eigenvalues(const Eigen::MatrixXd& m, int k) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("smallest_eigenvalues: matrix must be square");
  }
  if (k < 1 || k > m.rows()) {
    throw std::invalid_argument("smallest_eigenvalues: k out of range");
  }
  if (!m.allFinite()) {
    throw NumericalError("smallest_eigenvalues: non-finite matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("smallest_eigenvalues: dense eigensolver failed");
  }
  return solver.eigenvalues().head(k);
}

}  // namespace rotavg
