#include "rotavg/synth.hpp"

#include <cmath>
#include <numeric>

#include "rotavg/so3.hpp"

namespace rotavg {

namespace {

// Decodes a Pruefer sequence into tree edges; a uniform random sequence gives
// a uniform random labelled spanning tree.
std::vector<std::pair<int, int>> decode_pruefer(const std::vector<int>& code, int n) {
  std::vector<int> degree(n, 1);
  for (int v : code) degree[v]++;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  int ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int v : code) {
    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    if (--degree[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(std::min(leaf, n - 1), std::max(leaf, n - 1));
  return edges;
}

}  // namespace

SynthInstance generate(const SynthSpec& spec) {
  if (spec.n < 2) {
    throw std::invalid_argument("SynthSpec: n must be >= 2");
  }
  if (!(spec.phi >= 0.0)) {
    throw std::invalid_argument("SynthSpec: phi must be >= 0");
  }
  if (!(spec.p >= 0.0 && spec.p < 1.0)) {
    throw std::invalid_argument("SynthSpec: p must lie in [0, 1)");
  }
  const int n = spec.n;
  const double noise_stddev = spec.phi_is_variance ? std::sqrt(spec.phi) : spec.phi;
  std::mt19937_64 rng(spec.seed);

  RotationStack truth(n);
  for (Mat3& r : truth) r = random_rotation_uniform(rng);

  // Keep each complete-graph edge with probability 1 - p, then union a
  // uniformly random spanning tree so the instance stays connected.
  std::vector<char> keep(static_cast<std::size_t>(n) * n, 0);
  auto keep_at = [&](int i, int j) -> char& {
    return keep[static_cast<std::size_t>(i) * n + j];
  };
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      keep_at(i, j) = spec.p == 0.0 || unit(rng) >= spec.p;
    }
  }
  if (spec.p > 0.0) {
    std::uniform_int_distribution<int> vertex(0, n - 1);
    std::vector<int> code(std::max(0, n - 2));
    for (int& c : code) c = vertex(rng);
    for (const auto& [i, j] : decode_pruefer(code, n)) {
      keep_at(i, j) = 1;
    }
  }

  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!keep_at(i, j)) continue;
      const Mat3 noise = random_rotation(rng, noise_stddev);
      edges.push_back({i, j, truth[i].transpose() * truth[j] * noise});
    }
  }
  return {RAGraph(n, std::move(edges)), std::move(truth)};
}

}  // namespace rotavg
