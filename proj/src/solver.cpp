#include "fram/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detail/affine_kernel.hpp"
#include "detail/fram_loop.hpp"
#include "fram/errors.hpp"

namespace fram {

std::string_view to_string(Variant v) noexcept {
  return v == Variant::fram ? "fram" : "dspfp";
}

Variant parse_variant(std::string_view name) {
  if (name == "fram") return Variant::fram;
  if (name == "dspfp") return Variant::dspfp;
  throw ValidationError("unknown variant '" + std::string(name) + "' (expected fram|dspfp)");
}

void FramConfig::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw ValidationError("theta must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in (0, 1]");
  if (!(delta_threshold > 0.0)) throw ValidationError("delta threshold must be positive");
  if (!(gamma_threshold > 0.0 && gamma_threshold < 1.0)) {
    throw ValidationError("gamma threshold must lie in (0, 1)");
  }
  if (max_outer <= 0) throw ValidationError("max_outer must be positive");
  if (sdsn_max_iterations <= 0) throw ValidationError("SDSN iteration cap must be positive");
  if (dsn_iterations <= 0) throw ValidationError("dsn_iterations must be positive");
}

SdsnConfig FramConfig::sdsn_config() const {
  SdsnConfig c;
  c.theta = theta;
  c.gamma_threshold = gamma_threshold;
  c.max_iterations = sdsn_max_iterations;
  c.normalize_input = scale_projection_input;
  return c;
}

int MatchResult::projection_iterations_total() const noexcept {
  int total = 0;
  for (const auto& r : trace) total += r.projection_iterations;
  return total;
}

PreconditionedProblem precondition(const MatchingProblem& problem) {
  const Matrix& a = problem.first().adjacency();
  const Matrix& b = problem.second().adjacency();
  const Matrix& k = problem.similarity();
  const double c = std::max({max_entry(a), max_entry(b), max_entry(k)});
  if (!(c > 0.0)) {
    throw DegenerateInputError("both graphs have no edges and no node similarity");
  }
  const double root = std::sqrt(c);
  PreconditionedProblem out{a, b, k, c};
  for (double& v : out.first.data()) v /= root;
  for (double& v : out.second.data()) v /= root;
  for (double& v : out.similarity.data()) v /= c;
  return out;
}

Matrix gradient(const Matrix& first, const Matrix& second, const Matrix& similarity,
                const Matrix& current, double lambda) {
  Matrix x = matmul(matmul(first, current), second);
  require_same_shape(x, similarity, "gradient");
  auto dst = x.data();
  const auto k = similarity.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = dst[i] + lambda * k[i];
  return x;
}

namespace {

struct ExactBackend {
  Matrix gradient(const PreconditionedProblem& pre, const Matrix& n, double lambda) const {
    return fram::gradient(pre.first, pre.second, pre.similarity, n, lambda);
  }
  ProjectionResult project(const Matrix& x, const SdsnConfig& config) const {
    return sdsn(x, config);
  }
  Matrix project_fixed(const Matrix& x, int iterations) const {
    return dsn_fixed(x, iterations);
  }
  Matrix blend(const Matrix& previous, const Matrix& target, double alpha) const {
    Matrix out(previous.rows(), previous.cols());
    const auto p = previous.data();
    const auto d = target.data();
    auto o = out.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = (1.0 - alpha) * p[i] + alpha * d[i];
    return out;
  }
};

}  // namespace

MatchResult fram_match(const MatchingProblem& problem, const FramConfig& config,
                       const std::optional<Permutation>& truth) {
  if (truth && truth->size() != problem.size()) {
    throw DimensionError("ground truth length differs from problem size");
  }
  return detail::run_fram(problem, config, truth, ExactBackend{});
}

}  // namespace fram
