#include "fram/projection.hpp"

#include <cmath>

#include "detail/affine_kernel.hpp"
#include "fram/errors.hpp"

namespace fram {

void SdsnConfig::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw ValidationError("SDSN theta must be finite and positive");
  }
  if (!(gamma_threshold > 0.0 && gamma_threshold < 1.0)) {
    throw ValidationError("SDSN gamma threshold must lie in (0, 1)");
  }
  if (max_iterations <= 0) throw ValidationError("SDSN iteration cap must be positive");
}

Matrix project_affine(const Matrix& x) {
  require_square(x, "project_affine");
  return detail::affine_project(x, detail::ExactRound{}, true, false);
}

Matrix project_nonnegative(const Matrix& x) { return clamp_below(x, 0.0); }

Matrix project_zero_marginals(const Matrix& x) {
  require_square(x, "project_zero_marginals");
  return detail::affine_project(x, detail::ExactRound{}, false, false);
}

double mass_excess(const Matrix& x) {
  require_square(x, "mass_excess");
  return total_sum(x) / static_cast<double>(x.rows()) - 1.0;
}

ProjectionResult sdsn(const Matrix& x, const SdsnConfig& config) {
  return detail::sdsn_kernel(x, config, detail::ExactRound{});
}

Matrix dsn_fixed(const Matrix& x, int iterations) {
  return detail::dsn_kernel(x, iterations, detail::ExactRound{});
}

DykstraResult dykstra_project(const Matrix& x, double tolerance, int max_iterations) {
  require_square(x, "dykstra_project");
  const std::size_t n = x.rows();
  Matrix y = x;
  Matrix affine_correction(n, n);
  Matrix orthant_correction(n, n);
  DykstraResult result;
  for (int k = 0; k < max_iterations; ++k) {
    const Matrix shifted = y + affine_correction;
    const Matrix z = project_affine(shifted);
    affine_correction = shifted - z;
    const Matrix lifted = z + orthant_correction;
    Matrix next = project_nonnegative(lifted);
    orthant_correction = lifted - next;
    // A small step alone is not enough: y can stall while the corrections
    // still move. Requiring the affine and orthant iterates to agree as well
    // means both corrections are stationary, which is the optimality condition.
    const double step = frobenius_distance(next, y);
    const double gap = frobenius_distance(next, z);
    y = std::move(next);
    result.iterations = k + 1;
    if (step < tolerance && gap < tolerance) {
      result.converged = true;
      break;
    }
  }
  result.matrix = std::move(y);
  return result;
}

}  // namespace fram
