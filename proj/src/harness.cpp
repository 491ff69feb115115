#include "fram/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "fram/errors.hpp"
#include "fram/rng.hpp"

namespace fram {

namespace {

constexpr std::uint64_t kGraphStream = 0;
constexpr std::uint64_t kCorruptionStream = 1;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC 4180 quoting for free-text fields.
std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Partial Fisher-Yates: the first k entries of the returned order are a
// uniform k-subset of 0..count-1.
std::vector<std::size_t> sample_indices(std::size_t count, std::size_t k, CounterRng& rng) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(count - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace

std::string_view to_string(Generator g) noexcept {
  return g == Generator::geometric ? "geo" : "er";
}

Generator parse_generator(std::string_view name) {
  if (name == "geo" || name == "geometric") return Generator::geometric;
  if (name == "er" || name == "erdos_renyi") return Generator::erdos_renyi;
  throw ValidationError("unknown generator '" + std::string(name) + "' (expected er|geo)");
}

void InstanceSpec::validate() const {
  if (n < 2) throw ValidationError("instances need at least 2 nodes");
  if (!(noise >= 0.0 && noise < 1.0)) throw ValidationError("noise must lie in [0, 1)");
  if (generator == Generator::erdos_renyi && !(edge_probability > 0.0 && edge_probability < 1.0)) {
    throw ValidationError("edge probability must lie in (0, 1)");
  }
}

AttributedGraph gen_geometric(std::size_t n, std::uint64_t seed, bool with_features) {
  if (n < 2) throw ValidationError("gen_geometric needs n >= 2");
  CounterRng rng(seed, kGraphStream);
  Matrix points(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    points(i, 0) = rng.uniform();
    points(i, 1) = rng.uniform();
  }
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = points(i, 0) - points(j, 0);
      const double dy = points(i, 1) - points(j, 1);
      a(i, j) = a(j, i) = std::sqrt(dx * dx + dy * dy);
    }
  }
  if (!with_features) return AttributedGraph(std::move(a));
  return AttributedGraph(std::move(a), std::move(points));
}

AttributedGraph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw ValidationError("gen_erdos_renyi needs n >= 2");
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("edge probability must lie in (0, 1)");
  CounterRng rng(seed, kGraphStream);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < p) a(i, j) = a(j, i) = 1.0;
  return AttributedGraph(std::move(a));
}

LabeledPair corrupt(const AttributedGraph& g, double noise, std::uint64_t seed) {
  if (!(noise >= 0.0 && noise < 1.0)) throw ValidationError("noise must lie in [0, 1)");
  CounterRng rng(seed, kCorruptionStream);
  const std::size_t n = g.size();
  Matrix noisy = g.adjacency();

  std::vector<std::pair<std::size_t, std::size_t>> present, absent;
  std::vector<double> weights;
  bool binary = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = noisy(i, j);
      if (w != 0.0) {
        present.emplace_back(i, j);
        weights.push_back(w);
        binary = binary && w == 1.0;
      } else {
        absent.emplace_back(i, j);
      }
    }
  }
  // The small slack keeps e.g. 0.05·500 from ceiling to 26.
  const auto wanted = static_cast<std::size_t>(
      std::ceil(noise * static_cast<double>(present.size()) - 1e-9));

  if (wanted > 0) {
    if (absent.empty()) {
      for (std::size_t e : sample_indices(present.size(), std::min(wanted, present.size()), rng)) {
        const auto [i, j] = present[e];
        const double w = noisy(i, j) * (1.0 + rng.uniform(-0.1, 0.1));
        noisy(i, j) = noisy(j, i) = w;
      }
    } else {
      for (std::size_t e : sample_indices(absent.size(), std::min(wanted, absent.size()), rng)) {
        const auto [i, j] = absent[e];
        const double w =
            binary || weights.empty() ? 1.0 : weights[static_cast<std::size_t>(rng.below(weights.size()))];
        noisy(i, j) = noisy(j, i) = w;
      }
    }
  }

  const Permutation perm = random_permutation(n, rng);
  Matrix relabeled(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) relabeled(perm[i], perm[j]) = noisy(i, j);
  std::optional<Matrix> features;
  if (g.features()) {
    const Matrix& f = *g.features();
    features.emplace(n, f.cols());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < f.cols(); ++k) (*features)(perm[i], k) = f(i, k);
  }
  return {g, AttributedGraph(std::move(relabeled), std::move(features)), perm};
}

LabeledPair make_instance(const InstanceSpec& spec, int repeat) {
  spec.validate();
  const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(repeat);
  const AttributedGraph g = spec.generator == Generator::geometric
                                ? gen_geometric(spec.n, seed, spec.with_features)
                                : gen_erdos_renyi(spec.n, spec.edge_probability, seed);
  return corrupt(g, spec.noise, seed);
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("FRAM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<ExperimentRecord> run_experiment(const ExperimentPlan& plan) {
  if (plan.specs.empty()) throw ValidationError("experiment needs at least one instance spec");
  if (plan.repeats <= 0) throw ValidationError("repeats must be positive");
  if (plan.variants.empty() || plan.policies.empty()) {
    throw ValidationError("experiment needs at least one variant and one precision policy");
  }
  for (const auto& s : plan.specs) s.validate();

  struct Cell {
    std::size_t spec;
    int repeat;
    Variant variant;
    std::size_t policy;
  };
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < plan.specs.size(); ++s)
    for (int r = 0; r < plan.repeats; ++r)
      for (Variant v : plan.variants)
        for (std::size_t p = 0; p < plan.policies.size(); ++p) cells.push_back({s, r, v, p});

  std::vector<ExperimentRecord> records(cells.size());
  auto run_cell = [&](std::size_t index) {
    const Cell& cell = cells[index];
    const InstanceSpec& spec = plan.specs[cell.spec];
    const PrecisionPolicy& policy = plan.policies[cell.policy];
    ExperimentRecord& rec = records[index];
    rec.spec_index = cell.spec;
    rec.spec = spec;
    rec.seed = spec.seed + static_cast<std::uint64_t>(cell.repeat);
    rec.variant = cell.variant;
    rec.precision = policy.label();
    const auto start = std::chrono::steady_clock::now();
    try {
      const LabeledPair pair = make_instance(spec, cell.repeat);
      const MatchingProblem problem(pair.source, pair.target, plan.lambda);
      FramConfig config = plan.config;
      config.variant = cell.variant;
      config.theta = plan.theta.value_or(spec.generator == Generator::geometric ? 2.0 : 10.0);
      const MatchResult result = policy.is_fp64()
                                     ? fram_match(problem, config, pair.truth)
                                     : fram_mixed(problem, config, policy, pair.truth);
      rec.accuracy = result.accuracy.value_or(0.0);
      rec.matching_error = result.matching_error;
      rec.objective = result.objective;
      rec.outer_iters = result.outer_iterations;
      rec.sdsn_iters_total = result.projection_iterations_total();
      rec.converged = result.converged;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  };

  const unsigned threads =
      std::min<std::size_t>(plan.threads == 0 ? default_thread_count() : plan.threads,
                            cells.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.spec_index, a.seed, a.variant, a.precision) <
           std::tie(b.spec_index, b.seed, b.variant, b.precision);
  });
  return records;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  out << "generator,n,p_edge,noise,seed,variant,precision,accuracy,matching_error,objective,"
         "outer_iters,sdsn_iters_total,converged,error,wall_ms\n";
  for (const auto& r : records) {
    out << to_string(r.spec.generator) << ',' << r.spec.n << ','
        << fmt_double(r.spec.edge_probability) << ',' << fmt_double(r.spec.noise) << ','
        << r.seed << ',' << to_string(r.variant) << ',' << csv_field(r.precision) << ','
        << fmt_double(r.accuracy) << ',' << fmt_double(r.matching_error) << ','
        << fmt_double(r.objective) << ',' << r.outer_iters << ',' << r.sdsn_iters_total << ','
        << (r.converged ? 1 : 0) << ',' << csv_field(r.error) << ',' << fmt_double(r.wall_ms) << '\n';
  }
  return out.str();
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  using Key = std::tuple<std::string, std::size_t, double, std::string, std::string>;
  std::vector<Key> order;
  std::map<Key, std::vector<const ExperimentRecord*>> groups;
  for (const auto& r : records) {
    if (!r.error.empty()) continue;
    Key key{std::string(to_string(r.spec.generator)), r.spec.n, r.spec.noise,
            std::string(to_string(r.variant)), r.precision};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  auto mean_std = [](const std::vector<double>& v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    return std::pair{m, sd};
  };
  std::vector<SummaryRow> rows;
  for (const Key& key : order) {
    const auto& group = groups.at(key);
    std::vector<double> acc, err, ms;
    for (const auto* r : group) {
      acc.push_back(r->accuracy);
      err.push_back(r->matching_error);
      ms.push_back(r->wall_ms);
    }
    SummaryRow row;
    std::tie(row.generator, row.n, row.noise, row.variant, row.precision) = key;
    row.count = group.size();
    std::tie(row.accuracy_mean, row.accuracy_std) = mean_std(acc);
    std::tie(row.error_mean, row.error_std) = mean_std(err);
    row.wall_ms_mean = mean_std(ms).first;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fram
