#include "rotavg/graph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace rotavg {

RAGraph::RAGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) {
    throw std::invalid_argument("RAGraph: need at least one vertex");
  }
  std::unordered_set<std::int64_t> seen;
  seen.reserve(edges_.size());
  adjacency_.assign(n_, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const Edge& edge = edges_[e];
    if (edge.i < 0 || edge.i >= n_ || edge.j < 0 || edge.j >= n_) {
      throw std::invalid_argument("RAGraph: vertex index out of range");
    }
    if (edge.i == edge.j) {
      throw std::invalid_argument("RAGraph: self-loop edge");
    }
    if (!edge.rel.allFinite()) {
      throw std::invalid_argument("RAGraph: non-finite measurement");
    }
    const std::int64_t lo = std::min(edge.i, edge.j);
    const std::int64_t hi = std::max(edge.i, edge.j);
    if (!seen.insert(lo * n_ + hi).second) {
      throw std::invalid_argument("RAGraph: duplicate measurement for a vertex pair");
    }
    adjacency_[edge.i].push_back({e, edge.j, true});
    adjacency_[edge.j].push_back({e, edge.i, false});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }
  // connectivity (BFS from vertex 0)
  std::vector<char> visited(n_, 0);
  std::deque<int> queue{0};
  visited[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const Incidence& inc : adjacency_[u]) {
      if (!visited[inc.neighbor]) {
        visited[inc.neighbor] = 1;
        ++reached;
        queue.push_back(inc.neighbor);
      }
    }
  }
  if (reached != n_) {
    throw std::invalid_argument("RAGraph: graph is not connected");
  }
}

namespace {

void check_stack(const RAGraph& g, const RotationStack& rotations) {
  if (static_cast<int>(rotations.size()) != g.num_vertices()) {
    throw std::invalid_argument("rotation stack length does not match vertex count");
  }
}

}  // namespace

double objective(const RAGraph& g, const RotationStack& rotations) {
  check_stack(g, rotations);
  double sum = 0.0;
  for (const Edge& e : g.edges()) {
    sum += (rotations[e.i] * e.rel - rotations[e.j]).squaredNorm();
  }
  return sum;
}

double trace_objective_sum(const RAGraph& g, const RotationStack& rotations) {
  check_stack(g, rotations);
  double sum = 0.0;
  for (const Edge& e : g.edges()) {
    sum += (rotations[e.i] * e.rel * rotations[e.j].transpose()).trace();
  }
  return sum;
}

Mat3 assemble_cost_block(const RAGraph& g, const RotationStack& rotations, int l) {
  check_stack(g, rotations);
  if (l < 0 || l >= g.num_vertices()) {
    throw std::invalid_argument("assemble_cost_block: vertex index out of range");
  }
  const auto& incident = g.incident(l);
  if (incident.empty()) {
    throw std::invalid_argument("assemble_cost_block: vertex has no incident edges");
  }
  Mat3 a = Mat3::Zero();
  for (const auto& inc : incident) {
    const Edge& e = g.edges()[inc.edge];
    if (inc.forward) {
      a.noalias() -= e.rel * rotations[inc.neighbor].transpose();
    } else {
      a.noalias() -= e.rel.transpose() * rotations[inc.neighbor].transpose();
    }
  }
  return a;
}

Eigen::MatrixXd assemble_r_tilde(const RAGraph& g) {
  const int n = g.num_vertices();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (const Edge& e : g.edges()) {
    m.block<3, 3>(3 * e.i, 3 * e.j) = e.rel;
    m.block<3, 3>(3 * e.j, 3 * e.i) = e.rel.transpose();
  }
  return m;
}

RotationStack spanning_tree_init(const RAGraph& g) {
  const int n = g.num_vertices();
  RotationStack result(n);
  std::vector<char> visited(n, 0);
  result[0] = Mat3::Identity();
  visited[0] = 1;
  std::deque<int> queue{0};
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& inc : g.incident(u)) {
      if (visited[inc.neighbor]) continue;
      const Edge& e = g.edges()[inc.edge];
      // forward traversal uses R_ij, reverse uses its transpose
      if (inc.forward) {
        result[inc.neighbor] = result[u] * e.rel;
      } else {
        result[inc.neighbor] = result[u] * e.rel.transpose();
      }
      visited[inc.neighbor] = 1;
      ++reached;
      queue.push_back(inc.neighbor);
    }
  }
  if (reached != n) {
    throw std::invalid_argument("spanning_tree_init: graph is not connected");
  }
  return result;
}

}  // namespace rotavg
