#include "fram/precision.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "detail/affine_kernel.hpp"
#include "detail/fram_loop.hpp"
#include "detail/rounding.hpp"
#include "fram/errors.hpp"

namespace fram {

FloatFormat FloatFormat::by_name(std::string_view name) {
  for (const FloatFormat& f : {fp64(), fp32(), tf32(), bf16(), fp16()}) {
    if (f.name == name) return f;
  }
  throw ValidationError("unknown float format '" + std::string(name) +
                        "' (expected fp64|fp32|tf32|bf16|fp16)");
}

double FloatFormat::max_finite() const {
  const int emax = (1 << (exponent_bits - 1)) - 1;
  return std::ldexp(2.0 - std::ldexp(1.0, -mantissa_bits), emax);
}

double FloatFormat::min_normal() const {
  const int emax = (1 << (exponent_bits - 1)) - 1;
  return std::ldexp(1.0, 1 - emax);
}

double round_to_format(double x, const FloatFormat& format) {
  if (format.exponent_bits < 2 || format.exponent_bits > 11 || format.mantissa_bits < 1 ||
      format.mantissa_bits > 52) {
    throw ValidationError("unsupported float format " + format.name);
  }
  return detail::NarrowRound(format)(x);
}

PrecisionPolicy PrecisionPolicy::fp64() {
  const FloatFormat f = FloatFormat::fp64();
  return {f, f, f, f};
}

PrecisionPolicy PrecisionPolicy::mixed() { return {}; }

PrecisionPolicy PrecisionPolicy::parse(std::string_view spec) {
  if (spec == "fp64") return fp64();
  if (spec == "mixed") return mixed();
  constexpr std::string_view prefix = "custom:";
  if (spec.substr(0, prefix.size()) != prefix) {
    throw ValidationError("precision must be fp64, mixed or custom:<grad>,<proj>,<upd>");
  }
  std::vector<std::string_view> parts;
  std::string_view rest = spec.substr(prefix.size());
  while (true) {
    const auto comma = rest.find(',');
    parts.push_back(rest.substr(0, comma));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (parts.size() != 3) {
    throw ValidationError("custom precision needs exactly three formats: <grad>,<proj>,<upd>");
  }
  PrecisionPolicy p;
  p.gradient = FloatFormat::by_name(parts[0]);
  p.projection = FloatFormat::by_name(parts[1]);
  p.update = FloatFormat::by_name(parts[2]);
  p.accumulate = p.gradient.is_host() ? FloatFormat::fp64() : FloatFormat::fp32();
  p.validate();
  return p;
}

std::string PrecisionPolicy::label() const {
  if (*this == fp64()) return "fp64";
  if (*this == mixed()) return "mixed";
  return "custom:" + gradient.name + "," + projection.name + "," + update.name;
}

bool PrecisionPolicy::is_fp64() const noexcept {
  return gradient.is_host() && projection.is_host() && update.is_host() && accumulate.is_host();
}

void PrecisionPolicy::validate() const {
  if (update.mantissa_bits < projection.mantissa_bits) {
    throw ValidationError("update format must be at least as wide as the projection format");
  }
}

namespace {

Matrix round_matrix(const Matrix& m, const detail::NarrowRound& round) {
  Matrix out = m;
  for (double& v : out.data()) v = round(v);
  return out;
}

Matrix emulated_product(const Matrix& a, const Matrix& b, const detail::NarrowRound& input,
                        const detail::NarrowRound& acc) {
  if (a.cols() != b.rows()) throw DimensionError("matmul_emulated: inner dimensions differ");
  const Matrix ra = round_matrix(a, input);
  const Matrix rb = round_matrix(b, input);
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < ra.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < ra.cols(); ++k) {
      const double aik = ra(i, k);
      const auto brow = rb.row(k);
      for (std::size_t j = 0; j < rb.cols(); ++j) out[j] = acc(out[j] + aik * brow[j]);
    }
  }
  return c;
}

class EmulatedBackend {
 public:
  explicit EmulatedBackend(const PrecisionPolicy& policy)
      : input_(policy.gradient),
        accumulate_(policy.accumulate),
        projection_(policy.projection),
        update_(policy.update) {}

  Matrix gradient(const PreconditionedProblem& pre, const Matrix& n, double lambda) const {
    Matrix x = emulated_product(emulated_product(pre.first, n, input_, accumulate_), pre.second,
                                input_, accumulate_);
    auto dst = x.data();
    const auto k = pre.similarity.data();
    for (std::size_t i = 0; i < dst.size(); ++i) {
      dst[i] = accumulate_(dst[i] + accumulate_(lambda * k[i]));
    }
    return x;
  }

  ProjectionResult project(const Matrix& x, const SdsnConfig& config) const {
    return detail::sdsn_kernel(x, config, projection_);
  }

  Matrix project_fixed(const Matrix& x, int iterations) const {
    return detail::dsn_kernel(x, iterations, projection_);
  }

  Matrix blend(const Matrix& previous, const Matrix& target, double alpha) const {
    Matrix out(previous.rows(), previous.cols());
    const auto p = previous.data();
    const auto d = target.data();
    auto o = out.data();
    const double keep = update_(1.0 - alpha);
    for (std::size_t i = 0; i < o.size(); ++i) {
      o[i] = update_(update_(keep * p[i]) + update_(alpha * d[i]));
    }
    return out;
  }

 private:
  detail::NarrowRound input_;
  detail::NarrowRound accumulate_;
  detail::NarrowRound projection_;
  detail::NarrowRound update_;
};

}  // namespace

Matrix matmul_emulated(const Matrix& a, const Matrix& b, const PrecisionPolicy& policy) {
  return emulated_product(a, b, detail::NarrowRound(policy.gradient),
                          detail::NarrowRound(policy.accumulate));
}

ProjectionResult sdsn_mixed(const Matrix& x, const SdsnConfig& config,
                            const PrecisionPolicy& policy) {
  return detail::sdsn_kernel(x, config, detail::NarrowRound(policy.projection));
}

MatchResult fram_mixed(const MatchingProblem& problem, const FramConfig& config,
                       const PrecisionPolicy& policy, const std::optional<Permutation>& truth) {
  policy.validate();
  if (truth && truth->size() != problem.size()) {
    throw DimensionError("ground truth length differs from problem size");
  }
  return detail::run_fram(problem, config, truth, EmulatedBackend(policy));
}

}  // namespace fram
