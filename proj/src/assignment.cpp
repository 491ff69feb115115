#include "fram/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "fram/errors.hpp"

namespace fram {

bool is_permutation(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

double assignment_score(const Matrix& n, std::span<const std::size_t> perm) {
  if (perm.size() != n.rows()) throw DimensionError("assignment length differs from row count");
  double s = 0.0;
  for (std::size_t i = 0; i < perm.size(); ++i) s += n(i, perm[i]);
  return s;
}

Assignment hungarian_max(const Matrix& n) {
  require_square(n, "hungarian_max");
  const std::size_t size = n.rows();
  constexpr double inf = std::numeric_limits<double>::infinity();

  // Shortest augmenting path formulation on cost = -N, 1-based with a
  // virtual column 0 holding the row currently being inserted.
  std::vector<double> u(size + 1, 0.0), v(size + 1, 0.0), minv(size + 1);
  std::vector<std::size_t> match(size + 1, 0), way(size + 1, 0);
  std::vector<bool> used(size + 1);

  for (std::size_t row = 1; row <= size; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[col0] = true;
      const std::size_t i0 = match[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t j = 1; j <= size; ++j) {
        if (used[j]) continue;
        const double cur = -n(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= size; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  Assignment out;
  out.perm.assign(size, 0);
  for (std::size_t j = 1; j <= size; ++j) out.perm[match[j] - 1] = j - 1;
  out.score = assignment_score(n, out.perm);
  return out;
}

Assignment brute_force_max(const Matrix& n) {
  require_square(n, "brute_force_max");
  if (n.rows() > kBruteForceLapLimit) {
    throw SizeError("brute_force_max supports n <= " + std::to_string(kBruteForceLapLimit) +
                    ", got " + std::to_string(n.rows()));
  }
  Permutation perm(n.rows());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Assignment best{perm, assignment_score(n, perm)};
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double s = assignment_score(n, perm);
    if (s > best.score) best = {perm, s};
  }
  return best;
}

Matrix assignment_to_matrix(std::span<const std::size_t> perm) {
  if (!is_permutation(perm) || perm.empty()) {
    throw ValidationError("assignment is not a permutation");
  }
  Matrix m(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) m(i, perm[i]) = 1.0;
  return m;
}

Permutation matrix_to_assignment(const Matrix& m) {
  require_square(m, "matrix_to_assignment");
  Permutation perm(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (v == 1.0) {
        perm[i] = j;
        ++ones;
      } else if (v != 0.0) {
        throw ValidationError("matrix is not a permutation matrix (non-0/1 entry)");
      }
    }
    if (ones != 1) throw ValidationError("matrix is not a permutation matrix (row count)");
  }
  if (!is_permutation(perm)) {
    throw ValidationError("matrix is not a permutation matrix (column count)");
  }
  return perm;
}

}  // namespace fram
