#include "fram/metrics.hpp"

#include <cmath>

#include "fram/assignment.hpp"
#include "fram/errors.hpp"

namespace fram {

double matching_error(const MatchingProblem& problem, const Matrix& matching) {
  const std::size_t n = problem.size();
  if (matching.rows() != n || matching.cols() != n) {
    throw DimensionError("matching_error: matching has the wrong shape");
  }
  const Permutation perm = matrix_to_assignment(matching);

  // (MÃMᵀ)ᵢⱼ = Ã[perm i, perm j] and (MF̃)ᵢ = F̃[perm i].
  const Matrix& a = problem.first().adjacency();
  const Matrix& b = problem.second().adjacency();
  double edge = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = a(i, j) - b(perm[i], perm[j]);
      edge += d * d;
    }
  }
  double error = 0.5 * std::sqrt(edge);
  if (problem.first().has_features()) {
    const Matrix& f = *problem.first().features();
    const Matrix& g = *problem.second().features();
    double node = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < f.cols(); ++k) {
        const double d = f(i, k) - g(perm[i], k);
        node += d * d;
      }
    }
    error += std::sqrt(node);
  }
  return error;
}

double node_accuracy(const Matrix& matching, const Matrix& truth) {
  require_same_shape(matching, truth, "node_accuracy");
  const Permutation m = matrix_to_assignment(matching);
  const Permutation t = matrix_to_assignment(truth);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] == t[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(m.size());
}

EvalReport evaluate(const MatchingProblem& problem, const Matrix& matching,
                    const std::optional<Matrix>& truth) {
  EvalReport r;
  r.matching_error = matching_error(problem, matching);
  r.objective = objective(problem, matching);
  if (truth) r.accuracy = node_accuracy(matching, *truth);
  return r;
}

}  // namespace fram
