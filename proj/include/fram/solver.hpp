#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fram/assignment.hpp"
#include "fram/graph.hpp"
#include "fram/matrix.hpp"
#include "fram/projection.hpp"

namespace fram {

enum class Variant { fram, dspfp };

std::string_view to_string(Variant v) noexcept;
// Accepts "fram" or "dspfp"; throws ValidationError otherwise.
Variant parse_variant(std::string_view name);

struct FramConfig {
  double theta = 2.0;
  double alpha = 0.95;
  double delta_threshold = 1e-4;
  double gamma_threshold = 1e-3;
  int max_outer = 100;
  int sdsn_max_iterations = 1000;
  Variant variant = Variant::fram;
  int dsn_iterations = 30;  // dspfp only
  bool scale_projection_input = true;

  // θ = 2 for dense graphs, θ = 10 for sparse ones.
  static FramConfig dense() { return {}; }
  static FramConfig sparse() {
    FramConfig c;
    c.theta = 10.0;
    return c;
  }

  void validate() const;
  SdsnConfig sdsn_config() const;
};

struct IterationRecord {
  double delta = 0.0;
  // Relaxed objective at the iterate the gradient was evaluated at.
  double objective = 0.0;
  int projection_iterations = 0;
  double wall_ms = 0.0;
};

struct MatchResult {
  Assignment assignment;
  Matrix relaxed;  // final N
  double objective = 0.0;
  double matching_error = 0.0;
  std::optional<double> accuracy;
  int outer_iterations = 0;
  bool converged = false;
  Variant variant = Variant::fram;
  std::vector<IterationRecord> trace;

  int projection_iterations_total() const noexcept;
};

// Edge matrices divided by √c and K by c, with c the largest entry over all
// three, so every entry lies in [0, 1].
struct PreconditionedProblem {
  Matrix first;
  Matrix second;
  Matrix similarity;
  double scale = 1.0;
};

// Throws DegenerateInputError when A, Ã and K are all zero.
PreconditionedProblem precondition(const MatchingProblem& problem);

// A·N·Ã + λK.
Matrix gradient(const Matrix& first, const Matrix& second, const Matrix& similarity,
                const Matrix& current, double lambda);

// Projected fixed-point matching: N ← (1−α)N + α·P(∇Φ(N)) from N = 11ᵀ/n
// until the normalized Frobenius change drops to delta_threshold, then
// discretized with the Hungarian method. P is SDSN for Variant::fram and the
// fixed-iteration DSN for Variant::dspfp.
MatchResult fram_match(const MatchingProblem& problem, const FramConfig& config,
                       const std::optional<Permutation>& truth = std::nullopt);

}  // namespace fram
