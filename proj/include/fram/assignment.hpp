#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fram/matrix.hpp"

namespace fram {

using Permutation = std::vector<std::size_t>;

// perm[i] is the column matched to row i; score = Σᵢ N[i, perm[i]].
struct Assignment {
  Permutation perm;
  double score = 0.0;
};

bool is_permutation(std::span<const std::size_t> perm);

// Σᵢ n(i, perm[i]), summed in row order.
double assignment_score(const Matrix& n, std::span<const std::size_t> perm);

// Maximum-weight perfect assignment by the Hungarian method with potentials,
// O(n³). Deterministic for identical input bits.
Assignment hungarian_max(const Matrix& n);

// Exhaustive maximum over all n! permutations (n ≤ 8); ties go to the
// lexicographically smallest permutation.
Assignment brute_force_max(const Matrix& n);

inline constexpr std::size_t kBruteForceLapLimit = 8;

Matrix assignment_to_matrix(std::span<const std::size_t> perm);
inline Matrix assignment_to_matrix(const Assignment& a) { return assignment_to_matrix(a.perm); }

// Inverse of assignment_to_matrix; throws ValidationError unless m is a 0/1
// matrix with exactly one 1 per row and column.
Permutation matrix_to_assignment(const Matrix& m);

}  // namespace fram
