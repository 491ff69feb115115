#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fram/assignment.hpp"
#include "fram/graph.hpp"
#include "fram/matrix.hpp"
#include "fram/projection.hpp"
#include "fram/solver.hpp"

namespace fram {

// Binary floating-point format described by its field widths; mantissa_bits
// counts the explicitly stored fraction bits.
struct FloatFormat {
  std::string name;
  int exponent_bits = 11;
  int mantissa_bits = 52;

  static FloatFormat fp64() { return {"fp64", 11, 52}; }
  static FloatFormat fp32() { return {"fp32", 8, 23}; }
  static FloatFormat tf32() { return {"tf32", 8, 10}; }
  static FloatFormat bf16() { return {"bf16", 8, 7}; }
  static FloatFormat fp16() { return {"fp16", 5, 10}; }

  // Throws ValidationError for names other than fp64/fp32/tf32/bf16/fp16.
  static FloatFormat by_name(std::string_view name);

  double max_finite() const;
  double min_normal() const;
  bool is_host() const noexcept { return exponent_bits >= 11 && mantissa_bits >= 52; }

  friend bool operator==(const FloatFormat&, const FloatFormat&) = default;
};

// Round-to-nearest-even at the format's mantissa width. Results below the
// smallest normal flush to (signed) zero; results beyond the largest finite
// value raise RangeError. Identity for fp64.
double round_to_format(double x, const FloatFormat& format);

// Format used at each stage of the matching loop.
struct PrecisionPolicy {
  FloatFormat gradient = FloatFormat::tf32();    // matmul inputs
  FloatFormat projection = FloatFormat::fp32();  // every SDSN operation
  FloatFormat update = FloatFormat::fp64();      // convex update and δ
  FloatFormat accumulate = FloatFormat::fp32();  // matmul accumulator

  static PrecisionPolicy fp64();
  // TF32 gradient with FP32 accumulation, FP32 projection, FP64 update.
  static PrecisionPolicy mixed();
  // "fp64" | "mixed" | "custom:<grad>,<proj>,<upd>"
  static PrecisionPolicy parse(std::string_view spec);

  std::string label() const;
  bool is_fp64() const noexcept;
  // Update format must be at least as wide as the projection format.
  void validate() const;

  friend bool operator==(const PrecisionPolicy&, const PrecisionPolicy&) = default;
};

// Tensor-core style product: inputs rounded to policy.gradient, products
// formed in binary64, running sums rounded to policy.accumulate after every
// addition.
Matrix matmul_emulated(const Matrix& a, const Matrix& b, const PrecisionPolicy& policy);

// SDSN with every intermediate rounded to policy.projection.
ProjectionResult sdsn_mixed(const Matrix& x, const SdsnConfig& config,
                            const PrecisionPolicy& policy);

// FRAM with the gradient through matmul_emulated, the projection through
// sdsn_mixed (or the fixed-iteration DSN at projection precision) and the
// update at policy.update. Same result contract as fram_match.
MatchResult fram_mixed(const MatchingProblem& problem, const FramConfig& config,
                       const PrecisionPolicy& policy,
                       const std::optional<Permutation>& truth = std::nullopt);

}  // namespace fram
