#pragma once

#include <cstddef>
#include <optional>

#include "fram/matrix.hpp"

namespace fram {

// Undirected attributed graph: symmetric nonnegative edge-attribute matrix
// plus an optional nonnegative node-feature matrix (one row per node).
class AttributedGraph {
 public:
  // Throws ValidationError if the adjacency is asymmetric (tolerance 1e-12)
  // or any attribute is negative; DimensionError on shape problems.
  explicit AttributedGraph(Matrix adjacency, std::optional<Matrix> features = std::nullopt);

  std::size_t size() const noexcept { return adjacency_.rows(); }
  const Matrix& adjacency() const noexcept { return adjacency_; }
  const std::optional<Matrix>& features() const noexcept { return features_; }
  bool has_features() const noexcept { return features_.has_value(); }

  // Number of nonzero off-diagonal pairs {i, j}.
  std::size_t edge_count() const noexcept;

  friend bool operator==(const AttributedGraph&, const AttributedGraph&) = default;

 private:
  Matrix adjacency_;
  std::optional<Matrix> features_;
};

// Appends isolated, zero-feature nodes until the graph has n nodes.
AttributedGraph pad_graph(const AttributedGraph& g, std::size_t n);

// K = F·F̃ᵀ.
Matrix node_similarity(const Matrix& features, const Matrix& other_features);

// Square matching instance between two graphs with the node-similarity
// matrix precomputed. K is zero when the graphs carry no features.
class MatchingProblem {
 public:
  MatchingProblem(AttributedGraph first, AttributedGraph second, double lambda = 1.0);

  std::size_t size() const noexcept { return first_.size(); }
  const AttributedGraph& first() const noexcept { return first_; }
  const AttributedGraph& second() const noexcept { return second_; }
  double lambda() const noexcept { return lambda_; }
  const Matrix& similarity() const noexcept { return similarity_; }

 private:
  AttributedGraph first_;
  AttributedGraph second_;
  double lambda_;
  Matrix similarity_;
};

// ½⟨NᵀAN, Ã⟩ + λ⟨N, K⟩.
double objective(const MatchingProblem& problem, const Matrix& matching);

}  // namespace fram
