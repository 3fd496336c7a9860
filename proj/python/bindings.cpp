#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "rotavg/certificate.hpp"
#include "rotavg/eigs.hpp"
#include "rotavg/io.hpp"
#include "rotavg/so3.hpp"
#include "rotavg/solvers.hpp"
#include "rotavg/synth.hpp"

namespace py = pybind11;
using namespace rotavg;

namespace {

Init init_from_name(const std::string& name) {
  if (name == "identity") return Init::kIdentity;
  if (name == "random") return Init::kRandom;
  if (name == "spanning-tree") return Init::kSpanningTree;
  if (name == "explicit") return Init::kExplicit;
  throw std::invalid_argument("unknown init '" + name + "'");
}

SolverConfig make_config(double eps, int max_iter, const std::string& init,
                         std::uint64_t seed, const std::optional<RotationStack>& initial,
                         bool parallel, bool jacobi, bool validate_iterates) {
  SolverConfig cfg;
  cfg.epsilon = eps;
  cfg.max_iter = max_iter;
  cfg.init = initial.has_value() ? Init::kExplicit : init_from_name(init);
  cfg.seed = seed;
  if (initial.has_value()) cfg.initial = *initial;
  cfg.parallel = parallel;
  cfg.jacobi = jacobi;
  cfg.validate_iterates = validate_iterates;
  return cfg;
}

py::dict trace_dict(const ConvergenceTrace& trace) {
  py::list iters, objectives, residuals, times;
  for (const IterationRecord& rec : trace.iterations) {
    iters.append(rec.iter);
    objectives.append(rec.objective);
    residuals.append(rec.residual);
    times.append(rec.time_s);
  }
  py::dict out;
  out["iter"] = iters;
  out["objective"] = objectives;
  out["residual"] = residuals;
  out["time_s"] = times;
  out["converged"] = trace.converged;
  out["iterations_used"] = trace.iterations_used;
  return out;
}

}  // namespace

PYBIND11_MODULE(_rotavg, m) {
  m.doc() = "rotation averaging on SO(3): BCD/SUM solvers with optimality "
            "certificates";

  // ------------------------------------------------------------------- so3
  m.def(
      "axis_angle_to_rotation",
      [](const Vec3& axis, double theta) {
        return axis_angle_to_rotation({axis, theta});
      },
      py::arg("axis"), py::arg("theta"));
  m.def("rotation_to_nearest_valid", &rotation_to_nearest_valid, py::arg("m"));
  m.def(
      "random_rotation",
      [](std::uint64_t seed, double angle_stddev) {
        std::mt19937_64 rng(seed);
        return random_rotation(rng, angle_stddev);
      },
      py::arg("seed"), py::arg("angle_stddev"));
  m.def(
      "random_rotation_uniform",
      [](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return random_rotation_uniform(rng);
      },
      py::arg("seed"));
  m.def("chordal_sq", &chordal_sq, py::arg("a"), py::arg("b"));
  m.def("is_rotation", &is_rotation, py::arg("m"),
        py::arg("orth_tol") = tol::kOrthogonality,
        py::arg("det_tol") = tol::kDeterminant);
  m.def(
      "solve_losso",
      [](const Mat3& a) {
        const LossoResult result = solve_losso(a);
        return py::make_tuple(result.x, result.value);
      },
      py::arg("a"), "global minimizer of tr(a X) over SO(3); returns (X, value)");
  m.def(
      "losso_oracle",
      [](const Mat3& a, int resolution) {
        const LossoResult result = losso_oracle(a, resolution);
        return py::make_tuple(result.x, result.value);
      },
      py::arg("a"), py::arg("resolution") = 64);

  // ----------------------------------------------------------------- graph
  py::class_<RAGraph>(m, "RAGraph")
      .def(py::init([](int n, const std::vector<std::tuple<int, int, Mat3>>& edges) {
             std::vector<Edge> converted;
             converted.reserve(edges.size());
             for (const auto& [i, j, rel] : edges) converted.push_back({i, j, rel});
             return RAGraph(n, std::move(converted));
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &RAGraph::num_vertices)
      .def_property_readonly("num_edges", &RAGraph::num_edges)
      .def("edges",
           [](const RAGraph& g) {
             std::vector<std::tuple<int, int, Mat3>> out;
             out.reserve(g.edges().size());
             for (const Edge& e : g.edges()) out.emplace_back(e.i, e.j, e.rel);
             return out;
           })
      .def("__repr__", [](const RAGraph& g) {
        return "RAGraph(n=" + std::to_string(g.num_vertices()) +
               ", edges=" + std::to_string(g.num_edges()) + ")";
      });

  m.def("objective", &objective, py::arg("graph"), py::arg("rotations"));
  m.def("trace_objective_sum", &trace_objective_sum, py::arg("graph"),
        py::arg("rotations"));
  m.def("assemble_cost_block", &assemble_cost_block, py::arg("graph"),
        py::arg("rotations"), py::arg("l"));
  m.def("assemble_r_tilde", &assemble_r_tilde, py::arg("graph"));
  m.def("spanning_tree_init", &spanning_tree_init, py::arg("graph"));

  // --------------------------------------------------------------- solvers
  m.def(
      "solve_bcd",
      [](const RAGraph& g, double eps, int max_iter, const std::string& init,
         std::uint64_t seed, const std::optional<RotationStack>& initial,
         bool jacobi, bool validate_iterates) {
        const auto result = solve_bcd(
            g, make_config(eps, max_iter, init, seed, initial, false, jacobi,
                           validate_iterates));
        return py::make_tuple(result.rotations, trace_dict(result.trace));
      },
      py::arg("graph"), py::arg("eps") = 1e-6, py::arg("max_iter") = 10000,
      py::arg("init") = "spanning-tree", py::arg("seed") = 0,
      py::arg("initial") = std::nullopt, py::arg("jacobi") = false,
      py::arg("validate_iterates") = false,
      "returns (rotations, trace dict)");
  m.def(
      "solve_sum",
      [](const RAGraph& g, double eps, int max_iter, const std::string& init,
         std::uint64_t seed, const std::optional<RotationStack>& initial,
         bool parallel, bool validate_iterates) {
        const auto result = solve_sum(
            g, make_config(eps, max_iter, init, seed, initial, parallel, false,
                           validate_iterates));
        return py::make_tuple(result.rotations, trace_dict(result.trace), result.mu);
      },
      py::arg("graph"), py::arg("eps") = 1e-6, py::arg("max_iter") = 10000,
      py::arg("init") = "spanning-tree", py::arg("seed") = 0,
      py::arg("initial") = std::nullopt, py::arg("parallel") = true,
      py::arg("validate_iterates") = false,
      "returns (rotations, trace dict, mu)");
  m.def("majorizer_value", &majorizer_value, py::arg("r"), py::arg("r_bar"),
        py::arg("b"), py::arg("mu"));
  m.def("smallest_eigenvalue", &smallest_eigenvalue, py::arg("m"));

  // ----------------------------------------------------------- certificate
  py::class_<Certificate>(m, "Certificate")
      .def_readonly("min_eig", &Certificate::min_eig)
      .def_readonly("asymmetry", &Certificate::asymmetry)
      .def_readonly("optimal", &Certificate::optimal)
      .def_readonly("tol", &Certificate::tol)
      .def("__repr__", [](const Certificate& c) {
        return "Certificate(min_eig=" + std::to_string(c.min_eig) +
               ", optimal=" + (c.optimal ? std::string("True") : std::string("False")) +
               ")";
      });
  m.def("build_lambda", &build_lambda, py::arg("graph"), py::arg("rotations"));
  m.def("certificate_matrix", &certificate_matrix, py::arg("graph"),
        py::arg("rotations"));
  m.def("certify", &certify, py::arg("graph"), py::arg("rotations"),
        py::arg("tol") = 0.0);

  // ------------------------------------------------------------------ synth
  m.def(
      "generate",
      [](int n, double phi, double p, std::uint64_t seed, bool phi_is_variance) {
        const SynthInstance inst = generate({n, phi, p, seed, phi_is_variance});
        return py::make_tuple(inst.graph, inst.ground_truth);
      },
      py::arg("n"), py::arg("phi"), py::arg("p") = 0.0, py::arg("seed") = 0,
      py::arg("phi_is_variance") = false,
      "returns (graph, ground_truth rotations)");

  // --------------------------------------------------------------------- io
  m.def("write_graph",
        [](const std::string& path, const RAGraph& g) { write_graph(path, g); },
        py::arg("path"), py::arg("graph"));
  m.def("read_graph",
        [](const std::string& path) { return read_graph(path); }, py::arg("path"));
  m.def("write_solution",
        [](const std::string& path, const RotationStack& rotations) {
          write_solution(path, rotations);
        },
        py::arg("path"), py::arg("rotations"));
  m.def("read_solution",
        [](const std::string& path) { return read_solution(path); }, py::arg("path"));

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

#ifdef VERSION_INFO
#define ROTAVG_STR_IMPL(x) #x
#define ROTAVG_STR(x) ROTAVG_STR_IMPL(x)
  m.attr("__version__") = ROTAVG_STR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
