#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "rotavg/graph.hpp"
#include "rotavg/solvers.hpp"

namespace rotavg {

// Text formats. All writers produce byte-deterministic output: numbers are
// printed with 17 significant digits (exact double round-trip), fields are
// space-separated, edge/row order is storage order.
//
// graph    header "RAG 1 <n> <m>", then m lines "<i> <j> <r11> ... <r33>"
//          (row-major, 0-based vertex indices)
// solution header "RAS 1 <n>", then n lines of 9 numbers
// trace    CSV "iter,objective,residual,time_s"
//
// Lines starting with '#' and blank lines are ignored on read. Parse errors
// carry the offending 1-based line number. Rotation blocks are validated
// against SO(3) within tol::kIoRotation.

void write_graph(const std::filesystem::path& path, const RAGraph& g);
RAGraph read_graph(const std::filesystem::path& path);

void write_solution(const std::filesystem::path& path, const RotationStack& rotations);
RotationStack read_solution(const std::filesystem::path& path);

void write_trace(const std::filesystem::path& path, const ConvergenceTrace& trace);

/// Per-run report; serialized as a single JSON object.
struct Report {
  int n = 0;
  int num_edges = 0;
  std::string algorithm;
  double avg_error = 0.0;  // objective / num_edges
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  double time_s = 0.0;
  std::optional<double> mu;  // SUM only
  double min_eig = 0.0;
  double asymmetry = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json config;  // echo of the solver configuration
};

nlohmann::json to_json(const Report& report);

/// Writes any JSON document with sorted keys and a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace rotavg
