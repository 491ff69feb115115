#pragma once

// Shared arithmetic for the affine/clip projections. Every kernel takes a
// rounding functor applied after each floating-point operation, so the FP64
// path (identity rounding) and the emulated narrow paths execute the same
// sequence of operations.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "fram/errors.hpp"
#include "fram/matrix.hpp"
#include "fram/projection.hpp"

namespace fram::detail {

struct ExactRound {
  constexpr double operator()(double x) const noexcept { return x; }
};

struct StepStats {
  double total = 0.0;  // 1ᵀX1 of the input
  double mean = 0.0;   // 1ᵀX1/n²
};

// out = affine(x) with unit (shift = 1/n) or zero (shift = 0) target marginals,
// optionally clipped at zero. out must already have x's shape.
template <class Round>
StepStats affine_step(const Matrix& x, Matrix& out, Round round, bool unit_marginals,
                      bool clip, std::vector<double>& rows, std::vector<double>& cols) {
  const std::size_t n = x.rows();
  const double dn = static_cast<double>(n);
  rows.assign(n, 0.0);
  cols.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = x.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s = round(s + r[j]);
      cols[j] = round(cols[j] + r[j]);
    }
    rows[i] = s;
  }
  StepStats stats;
  for (std::size_t i = 0; i < n; ++i) stats.total = round(stats.total + rows[i]);
  stats.mean = round(stats.total / (dn * dn));

  const double shift = unit_marginals ? round(round(1.0 / dn) + stats.mean) : stats.mean;
  for (double& c : cols) c = round(c / dn);
  for (std::size_t i = 0; i < n; ++i) {
    const double row_term = round(shift - round(rows[i] / dn));
    const auto src = x.row(i);
    auto dst = out.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      double y = round(round(src[j] + row_term) - cols[j]);
      if (clip) y = std::max(0.0, y);
      dst[j] = y;
    }
  }
  return stats;
}

template <class Round>
Matrix affine_project(const Matrix& x, Round round, bool unit_marginals, bool clip) {
  Matrix out(x.rows(), x.cols());
  std::vector<double> rows, cols;
  affine_step(x, out, round, unit_marginals, clip, rows, cols);
  return out;
}

template <class Round>
Matrix dsn_kernel(const Matrix& input, int iterations, Round round) {
  require_square(input, "dsn_fixed");
  if (iterations < 0) throw ValidationError("dsn_fixed iteration count must be nonnegative");
  Matrix current = input;
  for (double& v : current.data()) v = round(v);
  Matrix next(input.rows(), input.cols());
  std::vector<double> rows, cols;
  for (int k = 0; k < iterations; ++k) {
    affine_step(current, next, round, true, true, rows, cols);
    std::swap(current, next);
  }
  return current;
}

inline void require_nonnegative_input(const Matrix& x) {
  for (double v : x.data()) {
    if (v < 0.0) throw ValidationError("SDSN requires nonnegative input");
  }
}

template <class Round>
ProjectionResult sdsn_kernel(const Matrix& input, const SdsnConfig& config, Round round) {
  config.validate();
  require_square(input, "sdsn");
  require_nonnegative_input(input);
  const std::size_t n = input.rows();
  const double dn = static_cast<double>(n);

  ProjectionResult result;
  const double peak = max_entry(input);
  if (peak == 0.0) {
    result.matrix = Matrix::uniform(n);
    result.trace.converged = true;
    return result;
  }

  Matrix x(n, n);
  {
    const double half_theta = round(config.theta / 2.0);
    const auto src = input.data();
    auto dst = x.data();
    for (std::size_t k = 0; k < src.size(); ++k) {
      const double v = round(src[k]);
      dst[k] = config.normalize_input ? round(round(v / peak) * half_theta) : v;
    }
  }

  Matrix next(n, n);
  std::vector<double> rows, cols;
  int iteration = 0;
  while (iteration < config.max_iterations) {
    const StepStats stats = affine_step(x, next, round, true, true, rows, cols);
    std::swap(x, next);
    ++iteration;
    // γ is read off the sums of the iterate that was just projected. The
    // first round projects the scaled input itself, which is not a clipped
    // iterate, so its γ carries no convergence information.
    if (iteration > 1) {
      const double gamma = round(round(dn * stats.mean) - 1.0);
      result.trace.gamma_history.push_back(gamma);
      if (gamma <= config.gamma_threshold) {
        result.trace.converged = true;
        break;
      }
    }
  }
  result.trace.iterations = iteration;
  result.matrix = std::move(x);
  return result;
}

}  // namespace fram::detail
