#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "fram/graph.hpp"
#include "fram/matrix.hpp"
#include "fram/rng.hpp"

namespace fram::test {

inline Matrix random_matrix(CounterRng& rng, std::size_t rows, std::size_t cols,
                            double lo = -1.0, double hi = 1.0) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

inline Matrix random_nonnegative(CounterRng& rng, std::size_t rows, std::size_t cols) {
  return random_matrix(rng, rows, cols, 0.0, 1.0);
}

inline Matrix random_symmetric(CounterRng& rng, std::size_t n, bool zero_diagonal = true) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = (i == j && zero_diagonal) ? 0.0 : rng.uniform();
      m(i, j) = m(j, i) = v;
    }
  return m;
}

// Matrix with zero row and column sums and unit Frobenius norm.
inline Matrix random_zero_marginal(CounterRng& rng, std::size_t n) {
  Matrix m = random_matrix(rng, n, n);
  std::vector<double> r(n, 0.0), c(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r[i] += m(i, j);
      c[j] += m(i, j);
      total += m(i, j);
    }
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) += total / (nn * nn) - r[i] / nn - c[j] / nn;
  double norm = 0.0;
  for (double v : m.data()) norm += v * v;
  m *= 1.0 / std::sqrt(norm);
  return m;
}

inline double max_abs(std::span<const double> v, double target = 0.0) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - target));
  return worst;
}

inline std::uint64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  const auto key = [](double x) {
    std::int64_t i;
    std::memcpy(&i, &x, sizeof i);
    return i < 0 ? std::numeric_limits<std::int64_t>::min() - i : i;
  };
  const std::int64_t ka = key(a), kb = key(b);
  return ka > kb ? static_cast<std::uint64_t>(ka - kb) : static_cast<std::uint64_t>(kb - ka);
}

}  // namespace fram::test
