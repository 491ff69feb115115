#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "fram/assignment.hpp"
#include "fram/errors.hpp"
#include "fram/graph.hpp"
#include "fram/harness.hpp"
#include "fram/metrics.hpp"
#include "fram/precision.hpp"
#include "fram/projection.hpp"
#include "fram/solver.hpp"

namespace py = pybind11;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

fram::Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw fram::DimensionError("expected a 2-D array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return fram::Matrix(rows, cols, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const fram::Matrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

std::optional<fram::Matrix> to_optional(const std::optional<Array>& a) {
  if (!a) return std::nullopt;
  return to_matrix(*a);
}

py::dict trace_dict(const fram::ProjectionTrace& t) {
  py::dict d;
  d["iterations"] = t.iterations;
  d["gamma_history"] = t.gamma_history;
  d["converged"] = t.converged;
  return d;
}

fram::MatchingProblem make_problem(const Array& a, const Array& b,
                                   const std::optional<Array>& f,
                                   const std::optional<Array>& fb, double lam) {
  return fram::MatchingProblem(fram::AttributedGraph(to_matrix(a), to_optional(f)),
                               fram::AttributedGraph(to_matrix(b), to_optional(fb)), lam);
}

py::dict result_dict(const fram::MatchResult& r, const std::string& precision) {
  py::dict d;
  d["assignment"] = r.assignment.perm;
  d["objective"] = r.objective;
  d["matching_error"] = r.matching_error;
  d["accuracy"] = r.accuracy ? py::cast(*r.accuracy) : py::none();
  d["converged"] = r.converged;
  d["outer_iters"] = r.outer_iterations;
  d["sdsn_iters_total"] = r.projection_iterations_total();
  d["variant"] = std::string(fram::to_string(r.variant));
  d["precision"] = precision;
  d["relaxed"] = to_array(r.relaxed);
  py::list deltas;
  for (const auto& t : r.trace) deltas.append(t.delta);
  d["deltas"] = deltas;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph matching with scaled doubly stochastic projections";

  py::register_exception<fram::Error>(m, "FramError", PyExc_ValueError);

  m.def("project_affine", [](const Array& x) { return to_array(fram::project_affine(to_matrix(x))); },
        "Nearest matrix with unit row and column sums.");
  m.def("project_nonnegative",
        [](const Array& x) { return to_array(fram::project_nonnegative(to_matrix(x))); });
  m.def("project_zero_marginals",
        [](const Array& x) { return to_array(fram::project_zero_marginals(to_matrix(x))); });
  m.def("mass_excess", [](const Array& x) { return fram::mass_excess(to_matrix(x)); });

  m.def(
      "sdsn",
      [](const Array& x, double theta, double gamma_threshold, int max_iterations,
         const std::string& precision) {
        fram::SdsnConfig c;
        c.theta = theta;
        c.gamma_threshold = gamma_threshold;
        c.max_iterations = max_iterations;
        const auto policy = fram::PrecisionPolicy::parse(precision);
        const auto r = policy.is_fp64() ? fram::sdsn(to_matrix(x), c)
                                        : fram::sdsn_mixed(to_matrix(x), c, policy);
        return py::make_tuple(to_array(r.matrix), trace_dict(r.trace));
      },
      py::arg("x"), py::arg("theta") = 2.0, py::arg("gamma_threshold") = 1e-3,
      py::arg("max_iterations") = 1000, py::arg("precision") = "fp64",
      "Scaled doubly stochastic normalization; returns (matrix, trace).");
  m.def(
      "dsn_fixed",
      [](const Array& x, int iterations) { return to_array(fram::dsn_fixed(to_matrix(x), iterations)); },
      py::arg("x"), py::arg("iterations") = 30);
  m.def(
      "dykstra_project",
      [](const Array& x, double tolerance, int max_iterations) {
        const auto r = fram::dykstra_project(to_matrix(x), tolerance, max_iterations);
        return py::make_tuple(to_array(r.matrix), r.iterations, r.converged);
      },
      py::arg("x"), py::arg("tolerance") = 1e-12, py::arg("max_iterations") = 100000);

  m.def("hungarian_max", [](const Array& n) {
    const auto a = fram::hungarian_max(to_matrix(n));
    return py::make_tuple(a.perm, a.score);
  });
  m.def("brute_force_max", [](const Array& n) {
    const auto a = fram::brute_force_max(to_matrix(n));
    return py::make_tuple(a.perm, a.score);
  });

  m.def(
      "round_to_format",
      [](double x, const std::string& format) {
        return fram::round_to_format(x, fram::FloatFormat::by_name(format));
      },
      py::arg("x"), py::arg("format"));

  m.def(
      "objective",
      [](const Array& a, const Array& b, const Array& n, const std::optional<Array>& f,
         const std::optional<Array>& fb, double lam) {
        return fram::objective(make_problem(a, b, f, fb, lam), to_matrix(n));
      },
      py::arg("a"), py::arg("b"), py::arg("n"), py::arg("f") = py::none(),
      py::arg("fb") = py::none(), py::arg("lam") = 1.0);
  m.def(
      "matching_error",
      [](const Array& a, const Array& b, const std::vector<std::size_t>& perm,
         const std::optional<Array>& f, const std::optional<Array>& fb) {
        return fram::matching_error(make_problem(a, b, f, fb, 1.0),
                                    fram::assignment_to_matrix(perm));
      },
      py::arg("a"), py::arg("b"), py::arg("perm"), py::arg("f") = py::none(),
      py::arg("fb") = py::none());

  m.def(
      "match",
      [](const Array& a, const Array& b, const std::optional<Array>& f,
         const std::optional<Array>& fb, double lam, double theta, double alpha,
         double delta_threshold, double gamma_threshold, int max_outer,
         const std::string& variant, const std::string& precision,
         const std::optional<std::vector<std::size_t>>& truth) {
        const auto problem = make_problem(a, b, f, fb, lam);
        fram::FramConfig c;
        c.theta = theta;
        c.alpha = alpha;
        c.delta_threshold = delta_threshold;
        c.gamma_threshold = gamma_threshold;
        c.max_outer = max_outer;
        c.variant = fram::parse_variant(variant);
        const auto policy = fram::PrecisionPolicy::parse(precision);
        fram::MatchResult r;
        {
          py::gil_scoped_release release;
          r = policy.is_fp64() ? fram::fram_match(problem, c, truth)
                               : fram::fram_mixed(problem, c, policy, truth);
        }
        return result_dict(r, policy.label());
      },
      py::arg("a"), py::arg("b"), py::arg("f") = py::none(), py::arg("fb") = py::none(),
      py::arg("lam") = 1.0, py::arg("theta") = 2.0, py::arg("alpha") = 0.95,
      py::arg("delta_threshold") = 1e-4, py::arg("gamma_threshold") = 1e-3,
      py::arg("max_outer") = 100, py::arg("variant") = "fram", py::arg("precision") = "fp64",
      py::arg("truth") = py::none(),
      "Match two attributed graphs; returns a dict with the assignment and diagnostics.");

  m.def(
      "gen_geometric",
      [](std::size_t n, std::uint64_t seed, bool with_features) {
        const auto g = fram::gen_geometric(n, seed, with_features);
        py::object f = g.features() ? py::object(to_array(*g.features())) : py::none();
        return py::make_tuple(to_array(g.adjacency()), f);
      },
      py::arg("n"), py::arg("seed"), py::arg("with_features") = true);
  m.def(
      "gen_erdos_renyi",
      [](std::size_t n, double p, std::uint64_t seed) {
        return to_array(fram::gen_erdos_renyi(n, p, seed).adjacency());
      },
      py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def(
      "make_instance",
      [](const std::string& generator, std::size_t n, double noise, std::uint64_t seed,
         double p_edge, bool with_features) {
        fram::InstanceSpec s;
        s.generator = fram::parse_generator(generator);
        s.n = n;
        s.noise = noise;
        s.seed = seed;
        s.edge_probability = p_edge;
        s.with_features = with_features;
        const auto pair = fram::make_instance(s);
        py::dict d;
        d["a"] = to_array(pair.source.adjacency());
        d["b"] = to_array(pair.target.adjacency());
        d["f"] = pair.source.features() ? py::object(to_array(*pair.source.features())) : py::none();
        d["fb"] = pair.target.features() ? py::object(to_array(*pair.target.features())) : py::none();
        d["truth"] = pair.truth;
        return d;
      },
      py::arg("generator"), py::arg("n"), py::arg("noise") = 0.0, py::arg("seed") = 0,
      py::arg("p_edge") = 0.05, py::arg("with_features") = true);
}
