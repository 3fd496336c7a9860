#pragma once

#include <cstdint>

#include "rotavg/graph.hpp"

namespace rotavg {

/// Synthetic instance parameters: n vertices, noise scale phi (radians),
/// edge-drop fraction p in [0, 1), RNG seed. phi is the standard deviation of
/// the noise angle unless phi_is_variance is set.
struct SynthSpec {
  int n = 2;
  double phi = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  bool phi_is_variance = false;
};

struct SynthInstance {
  RAGraph graph;
  RotationStack ground_truth;
};

/// Draws Haar-uniform ground-truth rotations, keeps each complete-graph edge
/// with probability 1 - p plus a uniformly random spanning tree to preserve
/// connectivity, and measures each retained pair as R_ij = R_i^T R_j N_ij
/// with N_ij a random axis / Gaussian angle rotation. Deterministic given the
/// spec.
SynthInstance generate(const SynthSpec& spec);

}  // namespace rotavg
