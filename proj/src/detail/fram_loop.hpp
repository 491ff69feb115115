#pragma once

#include <chrono>
#include <cmath>
#include <optional>

#include "fram/assignment.hpp"
#include "fram/metrics.hpp"
#include "fram/solver.hpp"

namespace fram::detail {

// Backend contract:
//   Matrix gradient(const PreconditionedProblem&, const Matrix& n, double lambda)
//   ProjectionResult project(const Matrix& x, const SdsnConfig&)
//   Matrix project_fixed(const Matrix& x, int iterations)
//   Matrix blend(const Matrix& previous, const Matrix& target, double alpha)
template <class Backend>
MatchResult run_fram(const MatchingProblem& problem, const FramConfig& config,
                     const std::optional<Permutation>& truth, const Backend& backend) {
  using Clock = std::chrono::steady_clock;
  config.validate();
  const PreconditionedProblem pre = precondition(problem);
  const double lambda = problem.lambda();
  const std::size_t n = problem.size();
  const SdsnConfig sdsn_config = config.sdsn_config();

  MatchResult result;
  result.variant = config.variant;
  Matrix current = Matrix::uniform(n);

  for (int t = 1; t <= config.max_outer; ++t) {
    const auto start = Clock::now();
    IterationRecord record;

    const Matrix x = backend.gradient(pre, current, lambda);
    record.objective =
        pre.scale * 0.5 * (frobenius_inner(current, x) +
                           lambda * frobenius_inner(current, pre.similarity));

    Matrix target;
    if (config.variant == Variant::fram) {
      ProjectionResult projected = backend.project(x, sdsn_config);
      record.projection_iterations = projected.trace.iterations;
      target = std::move(projected.matrix);
    } else {
      target = backend.project_fixed(x, config.dsn_iterations);
      record.projection_iterations = config.dsn_iterations;
    }

    Matrix next = backend.blend(current, target, config.alpha);
    const double norm = frobenius_norm(next);
    record.delta = norm > 0.0 ? frobenius_distance(next, current) / norm : 0.0;
    current = std::move(next);

    record.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    result.trace.push_back(record);
    result.outer_iterations = t;
    if (record.delta <= config.delta_threshold) {
      result.converged = true;
      break;
    }
  }

  result.assignment = hungarian_max(current);
  result.relaxed = std::move(current);
  const Matrix m = assignment_to_matrix(result.assignment);
  result.objective = objective(problem, m);
  result.matching_error = matching_error(problem, m);
  if (truth) result.accuracy = node_accuracy(m, assignment_to_matrix(*truth));
  return result;
}

}  // namespace fram::detail
