#include "rotavg/solvers.hpp"

#include <chrono>
#include <cmath>

#include "rotavg/eigs.hpp"
#include "rotavg/so3.hpp"

namespace rotavg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate_config(const RAGraph& g, const SolverConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) {
    throw std::invalid_argument("SolverConfig: epsilon must be > 0");
  }
  if (cfg.max_iter < 1) {
    throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
  }
  if (cfg.init == Init::kExplicit &&
      static_cast<int>(cfg.initial.size()) != g.num_vertices()) {
    throw std::invalid_argument("SolverConfig: explicit initial stack length mismatch");
  }
}

RotationStack initial_stack(const RAGraph& g, const SolverConfig& cfg) {
  const int n = g.num_vertices();
  switch (cfg.init) {
    case Init::kIdentity:
      return RotationStack(n, Mat3::Identity());
    case Init::kRandom: {
      std::mt19937_64 rng(cfg.seed);
      RotationStack stack(n);
      for (Mat3& r : stack) r = random_rotation_uniform(rng);
      return stack;
    }
    case Init::kSpanningTree:
      return spanning_tree_init(g);
    case Init::kExplicit:
      for (const Mat3& r : cfg.initial) {
        if (!is_rotation(r, tol::kIoRotation, tol::kIoRotation)) {
          throw std::invalid_argument("SolverConfig: explicit initial stack is not in SO(3)^n");
        }
      }
      return cfg.initial;
  }
  throw std::invalid_argument("SolverConfig: unknown init strategy");
}

void check_iterate(const RotationStack& stack) {
  for (const Mat3& r : stack) {
    if (!is_rotation(r, 1e-8, 1e-8)) {
      throw NumericalError("solver iterate left SO(3)");
    }
  }
}

void record_iteration(ConvergenceTrace& trace, int iter, double obj, double residual,
                      double elapsed) {
  if (!std::isfinite(obj)) {
    throw NumericalError("objective became non-finite");
  }
  trace.iterations.push_back({iter, obj, residual, elapsed});
  trace.iterations_used = iter;
}

}  // namespace

SolveResult solve_bcd(const RAGraph& g, const SolverConfig& cfg) {
  validate_config(g, cfg);
  const auto start = Clock::now();
  const int n = g.num_vertices();
  RotationStack r = initial_stack(g, cfg);
  RotationStack prev(n);
  SolveResult result;

  for (int t = 1; t <= cfg.max_iter; ++t) {
    prev = r;
    // Gauss-Seidel by default: blocks within a sweep see the freshest
    // iterates. cfg.jacobi reproduces the literal all-from-previous update.
    const RotationStack& basis = cfg.jacobi ? prev : r;
    for (int l = 0; l < n; ++l) {
      if (g.incident(l).empty()) continue;  // isolated vertex (n == 1 only)
      r[l] = solve_losso(assemble_cost_block(g, basis, l)).x;
    }
    double residual = 0.0;
    for (int k = 0; k < n; ++k) {
      residual += (r[k] - prev[k]).norm() / r[k].norm();
    }
    if (cfg.validate_iterates) check_iterate(r);
    record_iteration(result.trace, t, objective(g, r), residual, seconds_since(start));
    if (residual < cfg.epsilon) {
      result.trace.converged = true;
      break;
    }
  }
  result.rotations = std::move(r);
  return result;
}

SolveResult solve_sum(const RAGraph& g, const SolverConfig& cfg) {
  validate_config(g, cfg);
  const auto start = Clock::now();
  const int n = g.num_vertices();
  const int dim = 3 * n;

  Eigen::MatrixXd b = assemble_r_tilde(g);
  const double lambda_min = smallest_eigenvalue(b);
  // |min(lambda_min, 0)|, inflated by the eigensolver tolerance so B stays PSD
  const double mu = lambda_min < 0.0 ? -lambda_min + kEigTolerance : 0.0;
  b.diagonal().array() += mu;

  RotationStack r0 = initial_stack(g, cfg);
  Eigen::MatrixXd r(3, dim), prev(3, dim);
  for (int i = 0; i < n; ++i) r.middleCols<3>(3 * i) = r0[i];

  SolveResult result;
  result.mu = mu;
  RotationStack stack(n);

  for (int t = 1; t <= cfg.max_iter; ++t) {
    prev = r;
    // The surrogate cost is -prev * B; its column blocks give n independent
    // subproblems. Each block is computed identically in the serial and
    // parallel paths, so the result does not depend on scheduling.
#ifdef ROTAVG_HAS_OPENMP
#pragma omp parallel for schedule(static) if (cfg.parallel)
#endif
    for (int i = 0; i < n; ++i) {
      const Mat3 a_block = -(prev * b.middleCols<3>(3 * i));
      r.middleCols<3>(3 * i) = solve_losso(a_block.transpose()).x;
    }
    const double residual = (r - prev).norm() / r.norm();
    for (int i = 0; i < n; ++i) stack[i] = r.middleCols<3>(3 * i);
    if (cfg.validate_iterates) check_iterate(stack);
    record_iteration(result.trace, t, objective(g, stack), residual,
                     seconds_since(start));
    if (residual < cfg.epsilon) {
      result.trace.converged = true;
      break;
    }
  }
  result.rotations = std::move(stack);
  return result;
}

double majorizer_value(const RotationStack& r, const RotationStack& r_bar,
                       const Eigen::MatrixXd& b, double mu) {
  const int n = static_cast<int>(r.size());
  if (r_bar.size() != r.size() || b.rows() != 3 * n || b.cols() != 3 * n) {
    throw std::invalid_argument("majorizer_value: dimension mismatch");
  }
  Eigen::MatrixXd rs(3, 3 * n), rbs(3, 3 * n);
  for (int i = 0; i < n; ++i) {
    rs.middleCols<3>(3 * i) = r[i];
    rbs.middleCols<3>(3 * i) = r_bar[i];
  }
  const Eigen::MatrixXd rb = rs * b;           // R B
  const double cross = (rb * rbs.transpose()).trace();   // tr(B Rbar^T R)
  const double at_bar = (rbs * b * rbs.transpose()).trace();
  return 3.0 * mu * n - 2.0 * cross + at_bar;
}

}  // namespace rotavg
