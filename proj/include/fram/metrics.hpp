#pragma once

#include <optional>

#include "fram/graph.hpp"
#include "fram/matrix.hpp"

namespace fram {

struct EvalReport {
  double matching_error = 0.0;
  std::optional<double> accuracy;
  double objective = 0.0;
};

// ½‖A − MÃMᵀ‖_F + ‖F − MF̃‖_F; the feature term is dropped when the graphs
// have no features. M must be a permutation matrix (ValidationError).
double matching_error(const MatchingProblem& problem, const Matrix& matching);

// Fraction of rows on which the two permutation matrices agree.
double node_accuracy(const Matrix& matching, const Matrix& truth);

EvalReport evaluate(const MatchingProblem& problem, const Matrix& matching,
                    const std::optional<Matrix>& truth = std::nullopt);

}  // namespace fram
