#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "rotavg/certificate.hpp"
#include "rotavg/io.hpp"
#include "rotavg/solvers.hpp"
#include "rotavg/synth.hpp"

namespace {

using namespace rotavg;
using Clock = std::chrono::steady_clock;

// Flag-value problems detected after CLI11 parsing; exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateArgs {
  int n = 0;
  double phi = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  bool phi_is_variance = false;
  std::string out;
};

struct SolveArgs {
  std::string graph;
  std::string algorithm;
  double eps = 1e-6;
  int max_iter = 10000;
  std::string init = "spanning-tree";
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
  std::string report;
  bool serial = false;
};

struct CertifyArgs {
  std::string graph;
  std::string solution;
  double tol = 0.0;
  std::string report;
};

struct BenchArgs {
  std::vector<int> n_list;
  std::vector<double> phi_list;
  std::vector<double> p_list;
  int runs = 1;
  std::string algorithms = "bcd,sum";
  std::uint64_t seed = 1;
  double eps = 1e-6;
  int max_iter = 10000;
  std::string init = "spanning-tree";
  bool phi_is_variance = false;
  std::string report;
};

Init parse_init(const std::string& name) {
  if (name == "identity") return Init::kIdentity;
  if (name == "random") return Init::kRandom;
  if (name == "spanning-tree") return Init::kSpanningTree;
  throw UsageError("unknown --init '" + name + "' (expected identity|random|spanning-tree)");
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::string item;
  for (char c : csv) {
    if (c == ',') {
      if (!item.empty()) items.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty()) items.push_back(item);
  return items;
}

void check_synth_flags(int n, double phi, double p) {
  if (n < 2) throw UsageError("--n must be >= 2");
  if (phi < 0.0) throw UsageError("--phi must be >= 0");
  if (p < 0.0 || p >= 1.0) throw UsageError("--p must lie in [0, 1)");
}

void check_solver_flags(double eps, int max_iter) {
  if (!(eps > 0.0)) throw UsageError("--eps must be > 0");
  if (max_iter < 1) throw UsageError("--max-iter must be >= 1");
}

nlohmann::json config_echo(const std::string& algorithm, const SolverConfig& cfg,
                           const std::string& init_name) {
  return {{"algorithm", algorithm}, {"eps", cfg.epsilon},
          {"max_iter", cfg.max_iter}, {"init", init_name},
          {"parallel", cfg.parallel}, {"seed", cfg.seed}};
}

struct TimedSolve {
  SolveResult result;
  double time_s;
};

TimedSolve run_solver(const RAGraph& g, const std::string& algorithm,
                      const SolverConfig& cfg) {
  const auto t0 = Clock::now();
  SolveResult result =
      algorithm == "bcd" ? solve_bcd(g, cfg) : solve_sum(g, cfg);
  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  return {std::move(result), elapsed};
}

int run_generate(const GenerateArgs& args) {
  check_synth_flags(args.n, args.phi, args.p);
  SynthSpec spec{args.n, args.phi, args.p, args.seed, args.phi_is_variance};
  const SynthInstance inst = generate(spec);
  write_graph(args.out, inst.graph);
  write_solution(args.out + ".truth", inst.ground_truth);
  std::cout << "wrote " << args.out << " (" << inst.graph.num_vertices()
            << " vertices, " << inst.graph.num_edges() << " edges) and "
            << args.out << ".truth\n";
  return 0;
}

int run_solve(const SolveArgs& args) {
  if (args.algorithm != "bcd" && args.algorithm != "sum") {
    throw UsageError("--algorithm must be bcd or sum");
  }
  check_solver_flags(args.eps, args.max_iter);
  SolverConfig cfg;
  cfg.epsilon = args.eps;
  cfg.max_iter = args.max_iter;
  cfg.init = parse_init(args.init);
  cfg.seed = args.seed;
  cfg.parallel = !args.serial;

  const RAGraph g = read_graph(args.graph);
  const TimedSolve solved = run_solver(g, args.algorithm, cfg);
  write_solution(args.out, solved.result.rotations);
  if (!args.trace.empty()) {
    write_trace(args.trace, solved.result.trace);
  }

  const double obj = objective(g, solved.result.rotations);
  const Certificate cert = certify(g, solved.result.rotations);
  Report report;
  report.n = g.num_vertices();
  report.num_edges = g.num_edges();
  report.algorithm = args.algorithm;
  report.objective = obj;
  report.avg_error = g.num_edges() > 0 ? obj / g.num_edges() : 0.0;
  report.iterations = solved.result.trace.iterations_used;
  report.converged = solved.result.trace.converged;
  report.time_s = solved.time_s;
  if (args.algorithm == "sum") report.mu = solved.result.mu;
  report.min_eig = cert.min_eig;
  report.asymmetry = cert.asymmetry;
  report.seed = args.seed;
  report.config = config_echo(args.algorithm, cfg, args.init);
  if (!args.report.empty()) {
    write_json(args.report, to_json(report));
  }
  std::cout << args.algorithm << ": avg_error=" << report.avg_error
            << " iterations=" << report.iterations
            << " converged=" << (report.converged ? "yes" : "no")
            << " min_eig=" << report.min_eig << " time_s=" << report.time_s
            << '\n';
  return 0;
}

int run_certify(const CertifyArgs& args) {
  if (args.tol < 0.0) throw UsageError("--tol must be >= 0");
  const RAGraph g = read_graph(args.graph);
  const RotationStack solution = read_solution(args.solution);
  if (static_cast<int>(solution.size()) != g.num_vertices()) {
    throw std::invalid_argument("solution has " + std::to_string(solution.size()) +
                                " rotations but the graph has " +
                                std::to_string(g.num_vertices()) + " vertices");
  }
  const Certificate cert = certify(g, solution, args.tol);
  const nlohmann::json doc{{"n", g.num_vertices()},
                           {"num_edges", g.num_edges()},
                           {"objective", objective(g, solution)},
                           {"min_eig", cert.min_eig},
                           {"asymmetry", cert.asymmetry},
                           {"optimal", cert.optimal},
                           {"tol", cert.tol}};
  if (!args.report.empty()) {
    write_json(args.report, doc);
  }
  std::cout << "min_eig=" << cert.min_eig << " asymmetry=" << cert.asymmetry
            << " optimal=" << (cert.optimal ? "yes" : "no") << " tol=" << cert.tol
            << '\n';
  return 0;
}

int run_bench(const BenchArgs& args) {
  if (args.runs < 1) throw UsageError("--runs must be >= 1");
  check_solver_flags(args.eps, args.max_iter);
  if (args.n_list.empty() || args.phi_list.empty() || args.p_list.empty()) {
    throw UsageError("--n-list, --phi-list and --p-list must be non-empty");
  }
  const std::vector<std::string> algorithms = split_list(args.algorithms);
  if (algorithms.empty()) throw UsageError("--algorithms must be non-empty");
  for (const auto& a : algorithms) {
    if (a != "bcd" && a != "sum") throw UsageError("unknown algorithm '" + a + "'");
  }
  for (int n : args.n_list) {
    for (double phi : args.phi_list) {
      for (double p : args.p_list) check_synth_flags(n, phi, p);
    }
  }

  SolverConfig cfg;
  cfg.epsilon = args.eps;
  cfg.max_iter = args.max_iter;
  cfg.init = parse_init(args.init);

  nlohmann::json cells = nlohmann::json::array();
  for (int n : args.n_list) {
    for (double phi : args.phi_list) {
      for (double p : args.p_list) {
        struct Accumulator {
          double avg_error = 0.0, time_s = 0.0, min_eig = 0.0;
          double iterations = 0.0;
          int converged = 0;
          bool first = true;
        };
        std::vector<Accumulator> acc(algorithms.size());
        for (int run = 0; run < args.runs; ++run) {
          // per-run seed: base seed + run index
          const std::uint64_t run_seed = args.seed + static_cast<std::uint64_t>(run);
          const SynthInstance inst =
              generate({n, phi, p, run_seed, args.phi_is_variance});
          for (std::size_t a = 0; a < algorithms.size(); ++a) {
            SolverConfig run_cfg = cfg;
            run_cfg.seed = run_seed;
            const TimedSolve solved = run_solver(inst.graph, algorithms[a], run_cfg);
            const double obj = objective(inst.graph, solved.result.rotations);
            const Certificate cert = certify(inst.graph, solved.result.rotations);
            Accumulator& slot = acc[a];
            slot.avg_error += obj / inst.graph.num_edges();
            slot.time_s += solved.time_s;
            slot.iterations += solved.result.trace.iterations_used;
            slot.converged += solved.result.trace.converged ? 1 : 0;
            slot.min_eig = slot.first ? cert.min_eig
                                      : std::min(slot.min_eig, cert.min_eig);
            slot.first = false;
          }
        }
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
          const Accumulator& slot = acc[a];
          const nlohmann::json cell{{"n", n},
                                    {"phi", phi},
                                    {"p", p},
                                    {"algorithm", algorithms[a]},
                                    {"runs", args.runs},
                                    {"mean_avg_error", slot.avg_error / args.runs},
                                    {"min_min_eig", slot.min_eig},
                                    {"mean_time_s", slot.time_s / args.runs},
                                    {"mean_iterations", slot.iterations / args.runs},
                                    {"converged_runs", slot.converged}};
          cells.push_back(cell);
          std::cout << "n=" << n << " phi=" << phi << " p=" << p << " "
                    << algorithms[a]
                    << ": mean_avg_error=" << cell["mean_avg_error"].get<double>()
                    << " min_min_eig=" << cell["min_min_eig"].get<double>()
                    << " mean_time_s=" << cell["mean_time_s"].get<double>() << '\n';
        }
      }
    }
  }
  if (!args.report.empty()) {
    const nlohmann::json doc{
        {"cells", cells},
        {"config",
         {{"runs", args.runs}, {"seed", args.seed}, {"eps", args.eps},
          {"max_iter", args.max_iter}, {"init", args.init},
          {"algorithms", args.algorithms}}}};
    write_json(args.report, doc);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotation averaging: synthetic instances, BCD/SUM solvers, "
               "optimality certificates"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("generate", "generate a synthetic instance");
  gen_cmd->add_option("--n", gen.n, "vertex count")->required();
  gen_cmd->add_option("--phi", gen.phi, "noise angle scale in radians")->required();
  gen_cmd->add_option("--p", gen.p, "edge-drop fraction in [0, 1)");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_flag("--phi-is-variance", gen.phi_is_variance,
                    "treat --phi as the variance of the noise angle");
  gen_cmd->add_option("--out", gen.out, "output graph file (.truth sidecar added)")
      ->required();

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance");
  solve_cmd->add_option("--graph", solve.graph, "input graph file")->required();
  solve_cmd->add_option("--algorithm", solve.algorithm, "bcd or sum")->required();
  solve_cmd->add_option("--eps", solve.eps, "stopping threshold");
  solve_cmd->add_option("--max-iter", solve.max_iter, "iteration cap");
  solve_cmd->add_option("--init", solve.init, "identity|random|spanning-tree");
  solve_cmd->add_option("--seed", solve.seed, "seed for random init");
  solve_cmd->add_option("--out", solve.out, "output solution file")->required();
  solve_cmd->add_option("--trace", solve.trace, "per-iteration CSV trace");
  solve_cmd->add_option("--report", solve.report, "JSON report file");
  solve_cmd->add_flag("--serial", solve.serial, "disable parallel subproblems (sum)");

  CertifyArgs certify_args;
  CLI::App* certify_cmd =
      app.add_subcommand("certify", "check the optimality certificate");
  certify_cmd->add_option("--graph", certify_args.graph, "input graph file")
      ->required();
  certify_cmd->add_option("--solution", certify_args.solution, "solution file")
      ->required();
  certify_cmd->add_option("--tol", certify_args.tol,
                          "certificate tolerance (0 selects 1e-6 * n)");
  certify_cmd->add_option("--report", certify_args.report, "JSON report file");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark over a parameter grid");
  bench_cmd->add_option("--n-list", bench.n_list, "vertex counts")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--phi-list", bench.phi_list, "noise scales")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--p-list", bench.p_list, "edge-drop fractions")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--runs", bench.runs, "runs per cell");
  bench_cmd->add_option("--algorithms", bench.algorithms, "comma list of bcd,sum");
  bench_cmd->add_option("--seed", bench.seed, "base seed (per-run seed + index)");
  bench_cmd->add_option("--eps", bench.eps, "stopping threshold");
  bench_cmd->add_option("--max-iter", bench.max_iter, "iteration cap");
  bench_cmd->add_option("--init", bench.init, "identity|random|spanning-tree");
  bench_cmd->add_flag("--phi-is-variance", bench.phi_is_variance,
                      "treat phi values as variances");
  bench_cmd->add_option("--report", bench.report, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen_cmd->parsed()) return run_generate(gen);
    if (solve_cmd->parsed()) return run_solve(solve);
    if (certify_cmd->parsed()) return run_certify(certify_args);
    if (bench_cmd->parsed()) return run_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
