#pragma once

#include "rotavg/types.hpp"

namespace rotavg {

/// One relative-rotation measurement R_ij between vertices i and j.
struct Edge {
  int i = 0;
  int j = 0;
  Mat3 rel = Mat3::Identity();
};

/// Problem instance: n vertices and one measurement per unordered vertex
/// pair, forming a connected graph. The constructor validates indices,
/// uniqueness and connectivity and throws std::invalid_argument on failure.
/// Immutable after construction.
class RAGraph {
 public:
  RAGraph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Incident edges of a vertex, sorted by neighbor index. forward means the
  /// vertex is the stored edge's first endpoint.
  struct Incidence {
    int edge;
    int neighbor;
    bool forward;
  };
  const std::vector<Incidence>& incident(int v) const { return adjacency_[v]; }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Sum over stored edges of ||R_i R_ij - R_j||_F^2.
double objective(const RAGraph& g, const RotationStack& rotations);

/// Sum over stored edges of tr(R_i R_ij R_j^T).
/// Satisfies objective = 6|E| - 2 * trace_objective_sum.
double trace_objective_sum(const RAGraph& g, const RotationStack& rotations);

/// Cost matrix A_l of the per-block subproblem min tr(A_l R_l):
/// A_l = -sum_{(l,q) in E} R_lq R_q^T - sum_{(p,l) in E} R_pl^T R_p^T.
/// Throws std::invalid_argument for a vertex with no incident edges.
Mat3 assemble_cost_block(const RAGraph& g, const RotationStack& rotations, int l);

/// 3n x 3n symmetric block measurement matrix: block (i,j) = R_ij for each
/// stored edge, block (j,i) = R_ij^T, zero elsewhere (including the diagonal).
Eigen::MatrixXd assemble_r_tilde(const RAGraph& g);

/// Chains measurements along BFS shortest paths from vertex 0 (neighbors
/// visited in ascending index order). Exact global optimum on noiseless
/// instances; a feasible starting point otherwise.
RotationStack spanning_tree_init(const RAGraph& g);

}  // namespace rotavg
