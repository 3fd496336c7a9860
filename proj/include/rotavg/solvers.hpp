#pragma once

#include <cstdint>

#include "rotavg/graph.hpp"

namespace rotavg {

enum class Init { kIdentity, kRandom, kSpanningTree, kExplicit };

struct SolverConfig {
  double epsilon = 1e-6;  // relative-change stopping threshold
  int max_iter = 10000;
  Init init = Init::kSpanningTree;
  std::uint64_t seed = 0;   // used by Init::kRandom
  RotationStack initial;    // used by Init::kExplicit
  bool parallel = true;     // SUM only: solve the per-block subproblems across threads
  bool jacobi = false;      // BCD only: update all blocks from the previous sweep
  bool validate_iterates = false;  // check SO(3) feasibility after every iteration
};

struct IterationRecord {
  int iter;          // 1-based iteration (sweep) index
  double objective;  // value of the chordal objective after this iteration
  double residual;   // the algorithm's stopping metric at this iteration
  double time_s;     // cumulative wall-clock seconds since solve start
};

struct ConvergenceTrace {
  std::vector<IterationRecord> iterations;
  bool converged = false;
  int iterations_used = 0;
};

struct SolveResult {
  RotationStack rotations;
  ConvergenceTrace trace;
  double mu = 0.0;  // SUM majorizer shift; 0 for BCD
};

/// Cyclic block coordinate descent: per sweep, each block is replaced by the
/// closed-form minimizer of its subproblem, using the freshest iterates
/// (Gauss-Seidel order; cfg.jacobi switches to the all-from-previous variant,
/// which has no descent guarantee). Stops when
/// sum_k ||R_k - R_k_prev|| / ||R_k|| < epsilon.
SolveResult solve_bcd(const RAGraph& g, const SolverConfig& cfg);

/// Majorization-minimization on the stacked problem: with B = mu I + R~
/// positive semidefinite, each iteration minimizes the linear surrogate by
/// solving n independent subproblems (run in parallel when cfg.parallel).
/// Stops when ||R - R_prev||_F / ||R||_F < epsilon.
SolveResult solve_sum(const RAGraph& g, const SolverConfig& cfg);

/// Upper-bound value 3 mu n - 2 tr(B Rbar^T R) + tr(Rbar B Rbar^T) of the
/// quadratic objective -tr(R R~ R^T); tight at R = Rbar.
double majorizer_value(const RotationStack& r, const RotationStack& r_bar,
                       const Eigen::MatrixXd& b, double mu);

}  // namespace rotavg
