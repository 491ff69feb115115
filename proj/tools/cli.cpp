#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fram/errors.hpp"
#include "fram/graph.hpp"
#include "fram/harness.hpp"
#include "fram/io.hpp"
#include "fram/precision.hpp"
#include "fram/projection.hpp"
#include "fram/solver.hpp"

namespace fram::cli {

namespace {

struct MatchOptions {
  std::string graph_a;
  std::string graph_b;
  double theta = 2.0;
  double alpha = 0.95;
  double lambda = 1.0;
  double delta_th = 1e-4;
  double gamma_th = 1e-3;
  int max_outer = 100;
  int dsn_iters = 30;
  std::string variant = "fram";
  std::string precision = "fp64";
  std::string ground_truth;
  std::string out;
};

struct ProjectOptions {
  std::string matrix;
  double theta = 0.0;
  double gamma_th = 1e-3;
  int max_iters = 1000;
  std::string out;
  std::string trace;
};

struct BenchOptions {
  std::string generator = "er";
  std::size_t n = 200;
  double p_edge = 0.05;
  std::vector<double> noise{0.05, 0.15, 0.25};
  int seeds = 10;
  std::uint64_t seed_base = 0;
  std::vector<std::string> variants{"fram", "dspfp"};
  std::string precision = "fp64";
  std::optional<double> theta;
  double alpha = 0.95;
  double lambda = 1.0;
  double delta_th = 1e-4;
  double gamma_th = 1e-3;
  int max_outer = 100;
  bool no_features = false;
  std::string out = "bench_out";
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write " + path);
  f << text;
  if (!f) throw ValidationError("failed writing " + path);
}

int cmd_match(const MatchOptions& o, std::ostream& out) {
  const AttributedGraph a = io::load_graph(o.graph_a);
  const AttributedGraph b = io::load_graph(o.graph_b);
  const std::size_t n = std::max(a.size(), b.size());
  const MatchingProblem problem(pad_graph(a, n), pad_graph(b, n), o.lambda);

  FramConfig config;
  config.theta = o.theta;
  config.alpha = o.alpha;
  config.delta_threshold = o.delta_th;
  config.gamma_threshold = o.gamma_th;
  config.max_outer = o.max_outer;
  config.dsn_iterations = o.dsn_iters;
  config.variant = parse_variant(o.variant);
  const PrecisionPolicy policy = PrecisionPolicy::parse(o.precision);

  std::optional<Permutation> truth;
  if (!o.ground_truth.empty()) truth = io::load_permutation(o.ground_truth);

  const MatchResult result = policy.is_fp64() ? fram_match(problem, config, truth)
                                              : fram_mixed(problem, config, policy, truth);
  const std::string text = io::to_json(result, policy.label()).dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_text(o.out, text);
  }
  return result.converged ? kOk : kNotConverged;
}

int cmd_project(const ProjectOptions& o, std::ostream& out) {
  const Matrix x = io::load_matrix_csv(o.matrix);
  SdsnConfig config;
  config.theta = o.theta;
  config.gamma_threshold = o.gamma_th;
  config.max_iterations = o.max_iters;
  const ProjectionResult result = sdsn(x, config);

  std::string trace_path = o.trace;
  if (o.out.empty()) {
    io::write_matrix_csv(out, result.matrix);
  } else {
    std::ostringstream csv;
    io::write_matrix_csv(csv, result.matrix);
    write_text(o.out, csv.str());
    if (trace_path.empty()) trace_path = o.out + ".trace.json";
  }
  if (!trace_path.empty()) write_text(trace_path, io::to_json(result.trace).dump(2) + "\n");
  return result.trace.converged ? kOk : kNotConverged;
}

// "fp64,mixed,custom:tf32,fp32,fp64": a custom entry swallows the two
// comma-separated formats that follow it.
std::vector<std::string> split_policies(const std::string& list) {
  std::vector<std::string> tokens;
  std::stringstream ss(list);
  for (std::string t; std::getline(ss, t, ',');) tokens.push_back(t);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].rfind("custom:", 0) == 0) {
      if (i + 2 >= tokens.size()) throw ValidationError("incomplete custom precision in list");
      out.push_back(tokens[i] + "," + tokens[i + 1] + "," + tokens[i + 2]);
      i += 2;
    } else {
      out.push_back(tokens[i]);
    }
  }
  if (out.empty()) throw ValidationError("empty precision list");
  return out;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
  std::ostringstream s;
  s << std::left << std::setw(5) << "gen" << std::setw(7) << "n" << std::setw(8) << "noise"
    << std::setw(8) << "variant" << std::setw(26) << "precision" << std::setw(7) << "runs"
    << std::setw(22) << "accuracy" << std::setw(26) << "matching_error"
    << "wall_ms\n";
  char buf[64];
  for (const auto& r : rows) {
    s << std::setw(5) << r.generator << std::setw(7) << r.n;
    std::snprintf(buf, sizeof buf, "%.2f", r.noise);
    s << std::setw(8) << buf << std::setw(8) << r.variant << std::setw(26) << r.precision
      << std::setw(7) << r.count;
    std::snprintf(buf, sizeof buf, "%.4f ± %.4f", r.accuracy_mean, r.accuracy_std);
    s << std::setw(22) << buf;
    std::snprintf(buf, sizeof buf, "%.4f ± %.4f", r.error_mean, r.error_std);
    s << std::setw(26) << buf;
    std::snprintf(buf, sizeof buf, "%.1f", r.wall_ms_mean);
    s << buf << '\n';
  }
  return s.str();
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  ExperimentPlan plan;
  const Generator generator = parse_generator(o.generator);
  for (double noise : o.noise) {
    InstanceSpec spec;
    spec.generator = generator;
    spec.n = o.n;
    spec.edge_probability = o.p_edge;
    spec.noise = noise;
    spec.seed = o.seed_base;
    spec.with_features = !o.no_features;
    plan.specs.push_back(spec);
  }
  plan.repeats = o.seeds;
  plan.theta = o.theta;
  plan.lambda = o.lambda;
  plan.config.alpha = o.alpha;
  plan.config.delta_threshold = o.delta_th;
  plan.config.gamma_threshold = o.gamma_th;
  plan.config.max_outer = o.max_outer;
  plan.variants.clear();
  for (const auto& v : o.variants) plan.variants.push_back(parse_variant(v));
  plan.policies.clear();
  for (const auto& p : split_policies(o.precision)) {
    plan.policies.push_back(PrecisionPolicy::parse(p));
  }
  plan.threads = default_thread_count();

  const auto records = run_experiment(plan);

  std::filesystem::create_directories(o.out);
  const std::filesystem::path dir(o.out);
  write_text((dir / "results.csv").string(), records_to_csv(records));
  std::string jsonl;
  std::size_t failures = 0;
  for (const auto& r : records) {
    jsonl += io::to_json(r).dump() + "\n";
    if (!r.error.empty()) {
      ++failures;
      err << "cell " << to_string(r.variant) << "/" << r.precision << " seed " << r.seed
          << " failed: " << r.error << "\n";
    }
  }
  write_text((dir / "results.jsonl").string(), jsonl);
  out << format_summary(summarize(records));
  if (failures) err << failures << " of " << records.size() << " cells failed\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph matching by Frobenius-regularized assignment"};
  app.require_subcommand(1);

  MatchOptions mo;
  auto* match = app.add_subcommand("match", "Match two graphs given as JSON");
  match->add_option("--graph-a", mo.graph_a, "First graph JSON")->required();
  match->add_option("--graph-b", mo.graph_b, "Second graph JSON")->required();
  match->add_option("--theta", mo.theta, "Projection scaling parameter")->capture_default_str();
  match->add_option("--alpha", mo.alpha, "Step size")->capture_default_str();
  match->add_option("--lambda", mo.lambda, "Node-similarity weight")->capture_default_str();
  match->add_option("--delta-th", mo.delta_th, "Outer stopping threshold")->capture_default_str();
  match->add_option("--gamma-th", mo.gamma_th, "Projection stopping threshold")
      ->capture_default_str();
  match->add_option("--max-outer", mo.max_outer, "Outer iteration cap")->capture_default_str();
  match->add_option("--dsn-iters", mo.dsn_iters, "Fixed projection rounds for dspfp")
      ->capture_default_str();
  match->add_option("--variant", mo.variant, "fram|dspfp")
      ->check(CLI::IsMember({"fram", "dspfp"}))
      ->capture_default_str();
  match->add_option("--precision", mo.precision, "fp64|mixed|custom:<grad>,<proj>,<upd>")
      ->capture_default_str();
  match->add_option("--ground-truth", mo.ground_truth, "Ground-truth permutation JSON");
  match->add_option("--out", mo.out, "Write the result JSON here instead of stdout");

  ProjectOptions po;
  auto* project = app.add_subcommand("project", "Project a nonnegative CSV matrix with SDSN");
  project->add_option("--matrix", po.matrix, "Input matrix CSV")->required();
  project->add_option("--theta", po.theta, "Scaling parameter")->required();
  project->add_option("--gamma-th", po.gamma_th, "Stopping threshold")->capture_default_str();
  project->add_option("--max-iters", po.max_iters, "Iteration cap")->capture_default_str();
  project->add_option("--out", po.out, "Projected matrix CSV (default: stdout)");
  project->add_option("--trace", po.trace, "Trace JSON (default: <out>.trace.json)");

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "Run a synthetic benchmark batch");
  bench->add_option("--generator", bo.generator, "er|geo")
      ->check(CLI::IsMember({"er", "geo"}))
      ->capture_default_str();
  bench->add_option("--n", bo.n, "Nodes per graph")->capture_default_str();
  bench->add_option("--p-edge", bo.p_edge, "Edge probability (er)")->capture_default_str();
  bench->add_option("--noise", bo.noise, "Noise levels")->delimiter(',')->capture_default_str();
  bench->add_option("--seeds", bo.seeds, "Seeds per noise level")->capture_default_str();
  bench->add_option("--seed-base", bo.seed_base, "First seed")->capture_default_str();
  bench->add_option("--variants", bo.variants, "fram,dspfp")->delimiter(',')
      ->check(CLI::IsMember({"fram", "dspfp"}))
      ->capture_default_str();
  bench->add_option("--precision", bo.precision, "fp64,mixed,custom:<grad>,<proj>,<upd>")
      ->capture_default_str();
  bench->add_option("--theta", bo.theta, "Scaling parameter (default 2 geo, 10 er)");
  bench->add_option("--alpha", bo.alpha, "Step size")->capture_default_str();
  bench->add_option("--lambda", bo.lambda, "Node-similarity weight")->capture_default_str();
  bench->add_option("--delta-th", bo.delta_th, "Outer stopping threshold")->capture_default_str();
  bench->add_option("--gamma-th", bo.gamma_th, "Projection stopping threshold")
      ->capture_default_str();
  bench->add_option("--max-outer", bo.max_outer, "Outer iteration cap")->capture_default_str();
  bench->add_flag("--no-features", bo.no_features, "Drop coordinate features (geo)");
  bench->add_option("--out", bo.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kUsage;
  }

  try {
    if (*match) return cmd_match(mo, out);
    if (*project) return cmd_project(po, out);
    if (*bench) return cmd_bench(bo, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace fram::cli
