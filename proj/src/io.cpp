#include "fram/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "fram/errors.hpp"

namespace fram::io {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

double parse_double(std::string_view text, std::size_t line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("line " + std::to_string(line) + ": invalid number '" +
                          std::string(text) + "'");
  }
  return v;
}

}  // namespace

Matrix read_matrix_csv(std::istream& in) {
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      data.push_back(parse_double(rest.substr(0, comma), line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(cols) + " columns, got " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw ValidationError("matrix CSV is empty");
  return Matrix(rows, cols, std::move(data));
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

Matrix load_matrix_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_matrix_csv(in);
}

AttributedGraph graph_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<long long>();
    if (n < 1) throw ValidationError("graph must have at least one node");
    const auto size = static_cast<std::size_t>(n);
    Matrix a(size, size);
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw ValidationError("each edge must be [i, j, w]");
      }
      const auto i = e[0].get<long long>();
      const auto k = e[1].get<long long>();
      const double w = e[2].get<double>();
      if (i < 0 || k < 0 || i >= n || k >= n) {
        throw ValidationError("edge index out of range");
      }
      if (w < 0.0) throw ValidationError("edge weights must be nonnegative");
      a(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = w;
      a(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) = w;
    }
    std::optional<Matrix> features;
    if (j.contains("features") && !j.at("features").is_null()) {
      const auto& f = j.at("features");
      if (f.size() != size) throw ValidationError("features must have one row per node");
      const std::size_t d = f.at(0).size();
      if (d == 0) throw ValidationError("feature rows must be nonempty");
      std::vector<double> data;
      data.reserve(size * d);
      for (const auto& row : f) {
        if (row.size() != d) throw ValidationError("ragged feature matrix");
        for (const auto& v : row) data.push_back(v.get<double>());
      }
      features.emplace(size, d, std::move(data));
    }
    return AttributedGraph(std::move(a), std::move(features));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed graph JSON: ") + e.what());
  }
}

nlohmann::json graph_to_json(const AttributedGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  const Matrix& a = g.adjacency();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i; j < g.size(); ++j)
      if (a(i, j) != 0.0) edges.push_back({i, j, a(i, j)});
  nlohmann::json features = nullptr;
  if (g.features()) {
    features = nlohmann::json::array();
    const Matrix& f = *g.features();
    for (std::size_t i = 0; i < f.rows(); ++i) {
      const auto r = f.row(i);
      features.push_back(std::vector<double>(r.begin(), r.end()));
    }
  }
  return {{"n", g.size()}, {"edges", std::move(edges)}, {"features", std::move(features)}};
}

nlohmann::json load_json(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

AttributedGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(load_json(path));
}

Permutation permutation_from_json(const nlohmann::json& j) {
  try {
    const nlohmann::json* arr = &j;
    if (j.is_object()) arr = j.contains("perm") ? &j.at("perm") : &j.at("assignment");
    Permutation p = arr->get<Permutation>();
    if (!is_permutation(p)) throw ValidationError("ground truth is not a permutation");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed permutation JSON: ") + e.what());
  }
}

Permutation load_permutation(const std::filesystem::path& path) {
  return permutation_from_json(load_json(path));
}

nlohmann::json to_json(const MatchResult& r, const std::string& precision) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : r.trace) {
    trace.push_back({{"delta", t.delta},
                     {"objective", t.objective},
                     {"sdsn_iters", t.projection_iterations},
                     {"wall_ms", t.wall_ms}});
  }
  nlohmann::json j = {{"schema", kSchemaVersion},
                      {"variant", std::string(to_string(r.variant))},
                      {"precision", precision},
                      {"n", r.assignment.perm.size()},
                      {"assignment", r.assignment.perm},
                      {"objective", r.objective},
                      {"matching_error", r.matching_error},
                      {"converged", r.converged},
                      {"outer_iters", r.outer_iterations},
                      {"sdsn_iters_total", r.projection_iterations_total()},
                      {"trace", std::move(trace)}};
  if (r.accuracy) j["accuracy"] = *r.accuracy;
  return j;
}

nlohmann::json to_json(const ProjectionTrace& t) {
  return {{"schema", kSchemaVersion},
          {"iterations", t.iterations},
          {"gamma_history", t.gamma_history},
          {"converged", t.converged}};
}

nlohmann::json to_json(const ExperimentRecord& r) {
  nlohmann::json j = {{"schema", kSchemaVersion},
                      {"generator", std::string(to_string(r.spec.generator))},
                      {"n", r.spec.n},
                      {"p_edge", r.spec.edge_probability},
                      {"noise", r.spec.noise},
                      {"seed", r.seed},
                      {"variant", std::string(to_string(r.variant))},
                      {"precision", r.precision},
                      {"accuracy", r.accuracy},
                      {"matching_error", r.matching_error},
                      {"objective", r.objective},
                      {"outer_iters", r.outer_iters},
                      {"sdsn_iters_total", r.sdsn_iters_total},
                      {"converged", r.converged},
                      {"wall_ms", r.wall_ms}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

}  // namespace fram::io
