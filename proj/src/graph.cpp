#include "fram/graph.hpp"

#include <cmath>
#include <string>

#include "fram/errors.hpp"

namespace fram {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_nonnegative(const Matrix& m, const char* what) {
  for (double v : m.data()) {
    if (v < 0.0) throw ValidationError(std::string(what) + " has a negative entry");
  }
}

}  // namespace

AttributedGraph::AttributedGraph(Matrix adjacency, std::optional<Matrix> features)
    : adjacency_(std::move(adjacency)), features_(std::move(features)) {
  require_square(adjacency_, "graph adjacency");
  require_nonnegative(adjacency_, "graph adjacency");
  const std::size_t n = adjacency_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(adjacency_(i, j) - adjacency_(j, i)) > kSymmetryTolerance) {
        throw ValidationError("graph adjacency is not symmetric at (" + std::to_string(i) +
                              ", " + std::to_string(j) + ")");
      }
    }
  }
  if (features_) {
    if (features_->rows() != n) {
      throw DimensionError("feature matrix has " + std::to_string(features_->rows()) +
                           " rows for a graph of " + std::to_string(n) + " nodes");
    }
    require_nonnegative(*features_, "node features");
  }
}

std::size_t AttributedGraph::edge_count() const noexcept {
  std::size_t count = 0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (adjacency_(i, j) != 0.0) ++count;
  return count;
}

AttributedGraph pad_graph(const AttributedGraph& g, std::size_t n) {
  if (n < g.size()) throw DimensionError("pad_graph cannot shrink a graph");
  if (n == g.size()) return g;
  Matrix a(n, n);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) a(i, j) = g.adjacency()(i, j);
  std::optional<Matrix> f;
  if (g.features()) {
    const Matrix& src = *g.features();
    f.emplace(n, src.cols());
    for (std::size_t i = 0; i < src.rows(); ++i)
      for (std::size_t j = 0; j < src.cols(); ++j) (*f)(i, j) = src(i, j);
  }
  return AttributedGraph(std::move(a), std::move(f));
}

Matrix node_similarity(const Matrix& features, const Matrix& other_features) {
  if (features.cols() != other_features.cols()) {
    throw DimensionError("node_similarity: feature dimensions differ (" +
                         std::to_string(features.cols()) + " vs " +
                         std::to_string(other_features.cols()) + ")");
  }
  return matmul(features, other_features.transposed());
}

MatchingProblem::MatchingProblem(AttributedGraph first, AttributedGraph second, double lambda)
    : first_(std::move(first)), second_(std::move(second)), lambda_(lambda) {
  if (first_.size() != second_.size()) {
    throw DimensionError("matching requires graphs of equal size (" +
                         std::to_string(first_.size()) + " vs " +
                         std::to_string(second_.size()) + "); pad the smaller one");
  }
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) {
    throw ValidationError("lambda must be finite and nonnegative");
  }
  if (first_.has_features() != second_.has_features()) {
    throw ValidationError("either both graphs carry node features or neither does");
  }
  similarity_ = first_.has_features()
                    ? node_similarity(*first_.features(), *second_.features())
                    : Matrix(first_.size(), second_.size());
}

double objective(const MatchingProblem& problem, const Matrix& matching) {
  const std::size_t n = problem.size();
  if (matching.rows() != n || matching.cols() != n) {
    throw DimensionError("objective: matching must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  const Matrix an = matmul(problem.first().adjacency(), matching);
  const Matrix ntan = matmul(matching.transposed(), an);
  return 0.5 * frobenius_inner(ntan, problem.second().adjacency()) +
         problem.lambda() * frobenius_inner(matching, problem.similarity());
}

}  // namespace fram
