#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fram/assignment.hpp"
#include "fram/graph.hpp"
#include "fram/precision.hpp"
#include "fram/solver.hpp"

namespace fram {

enum class Generator { geometric, erdos_renyi };

std::string_view to_string(Generator g) noexcept;
// "geo"/"geometric" or "er"/"erdos_renyi".
Generator parse_generator(std::string_view name);

struct InstanceSpec {
  Generator generator = Generator::erdos_renyi;
  std::size_t n = 50;
  double edge_probability = 0.05;  // erdos_renyi only
  double noise = 0.0;
  std::uint64_t seed = 0;
  bool with_features = true;  // geometric only

  void validate() const;
};

// Source graph, its relabeled noisy copy and the ground-truth permutation:
// node i of `source` is node truth[i] of `target`.
struct LabeledPair {
  AttributedGraph source;
  AttributedGraph target;
  Permutation truth;
};

// n points uniform in the unit square; edge weights are Euclidean distances.
// Node features (when requested) are the coordinates.
AttributedGraph gen_geometric(std::size_t n, std::uint64_t seed, bool with_features = true);

// Symmetric 0/1 adjacency, each pair present independently with probability p.
AttributedGraph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// Adds ⌈noise·|E|⌉ absent edges (weight 1 for binary graphs, otherwise drawn
// from the existing weights), then relabels by a uniform random permutation.
// Graphs with no absent pair get ⌈noise·|E|⌉ weights jittered by (1 + u),
// u ~ U[-0.1, 0.1], instead. Edges are never removed.
LabeledPair corrupt(const AttributedGraph& g, double noise, std::uint64_t seed);

// Generates and corrupts the instance for (spec, repeat).
LabeledPair make_instance(const InstanceSpec& spec, int repeat = 0);

struct ExperimentPlan {
  std::vector<InstanceSpec> specs;
  FramConfig config;
  // Unset: θ = 2 for geometric instances, 10 for Erdős–Rényi ones.
  std::optional<double> theta;
  double lambda = 1.0;
  std::vector<Variant> variants{Variant::fram};
  std::vector<PrecisionPolicy> policies{PrecisionPolicy::fp64()};
  int repeats = 1;
  unsigned threads = 1;  // 0: hardware concurrency
};

struct ExperimentRecord {
  std::size_t spec_index = 0;
  InstanceSpec spec;
  std::uint64_t seed = 0;
  Variant variant = Variant::fram;
  std::string precision;
  double accuracy = 0.0;
  double matching_error = 0.0;
  double objective = 0.0;
  int outer_iters = 0;
  int sdsn_iters_total = 0;
  bool converged = false;
  double wall_ms = 0.0;
  std::string error;  // empty on success
};

// One record per (spec, repeat, variant, policy), sorted by
// (spec index, seed, variant, precision). A failing cell is recorded with
// `error` set and the batch continues.
std::vector<ExperimentRecord> run_experiment(const ExperimentPlan& plan);

// Stable column order; wall_ms is the last column.
std::string records_to_csv(const std::vector<ExperimentRecord>& records);

struct SummaryRow {
  std::string generator;
  std::size_t n = 0;
  double noise = 0.0;
  std::string variant;
  std::string precision;
  std::size_t count = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  double error_mean = 0.0;
  double error_std = 0.0;
  double wall_ms_mean = 0.0;
};

// Mean and sample standard deviation per (generator, n, noise, variant,
// precision) over successful records, in first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

// Reads FRAM_THREADS; falls back to the number of logical cores.
unsigned default_thread_count();

}  // namespace fram
