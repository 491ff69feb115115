#include <doctest.h>

#include "fram/errors.hpp"
#include "fram/graph.hpp"
#include "fram/rng.hpp"
#include "fram/assignment.hpp"
#include "oracles.hpp"
#include "support.hpp"

using fram::AttributedGraph;
using fram::Matrix;
using fram::MatchingProblem;

namespace {

AttributedGraph random_graph(fram::CounterRng& rng, std::size_t n, std::size_t d = 0) {
  Matrix a = fram::test::random_symmetric(rng, n);
  if (d == 0) return AttributedGraph(std::move(a));
  return AttributedGraph(std::move(a), fram::test::random_nonnegative(rng, n, d));
}

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(AttributedGraph(Matrix{{0, 1}, {2, 0}}), fram::ValidationError);
  CHECK_THROWS_AS(AttributedGraph(Matrix{{0, -1}, {-1, 0}}), fram::ValidationError);
  CHECK_THROWS_AS(AttributedGraph(Matrix(2, 3)), fram::DimensionError);
  CHECK_THROWS_AS(AttributedGraph(Matrix(2, 2), Matrix(3, 1)), fram::DimensionError);
  CHECK_THROWS_AS(AttributedGraph(Matrix(2, 2), Matrix{{1}, {-1}}), fram::ValidationError);
  CHECK_NOTHROW(AttributedGraph(Matrix{{0, 1}, {1 + 1e-13, 0}}));

  const AttributedGraph g(Matrix{{0, 1, 0}, {1, 0, 2}, {0, 2, 0}});
  CHECK(g.size() == 3);
  CHECK(g.edge_count() == 2);
  CHECK_FALSE(g.has_features());
}

TEST_CASE("padding appends isolated nodes") {
  const AttributedGraph g(Matrix{{0, 1}, {1, 0}}, Matrix{{1, 2}, {3, 4}});
  const AttributedGraph p = fram::pad_graph(g, 4);
  CHECK(p.size() == 4);
  CHECK(p.adjacency()(0, 1) == 1);
  CHECK(p.adjacency()(3, 2) == 0);
  CHECK(p.features()->rows() == 4);
  CHECK((*p.features())(3, 1) == 0);
  CHECK(fram::pad_graph(g, 2) == g);
  CHECK_THROWS_AS(fram::pad_graph(g, 1), fram::DimensionError);
}

TEST_CASE("node similarity") {
  CHECK(fram::node_similarity(Matrix::identity(3), Matrix::identity(3)) == Matrix::identity(3));
  CHECK(fram::node_similarity(Matrix(3, 2), Matrix{{1, 2}, {3, 4}, {5, 6}}) == Matrix(3, 3));
  CHECK(fram::node_similarity(Matrix{{1, 2}}, Matrix{{3, 4}}) == Matrix{{11}});
  CHECK_THROWS_AS(fram::node_similarity(Matrix(2, 2), Matrix(2, 3)), fram::DimensionError);
}

TEST_CASE("matching problem validation") {
  fram::CounterRng rng(3);
  const auto g3 = random_graph(rng, 3);
  const auto g4 = random_graph(rng, 4);
  const auto f3 = random_graph(rng, 3, 2);
  CHECK_THROWS_AS(MatchingProblem(g3, g4), fram::DimensionError);
  CHECK_THROWS_AS(MatchingProblem(g3, g3, -1.0), fram::ValidationError);
  CHECK_THROWS_AS(MatchingProblem(g3, f3), fram::ValidationError);
  const MatchingProblem p(g3, g3);
  CHECK(p.similarity() == Matrix(3, 3));
  const MatchingProblem q(f3, f3, 0.5);
  CHECK(q.lambda() == 0.5);
  CHECK(q.similarity() == fram::node_similarity(*f3.features(), *f3.features()));
}

TEST_CASE("objective examples") {
  fram::CounterRng rng(4);
  const auto g = random_graph(rng, 5, 3);
  const MatchingProblem p(g, g, 0.7);
  CHECK(fram::objective(p, Matrix(5, 5)) == 0.0);

  const double a2 = fram::frobenius_inner(g.adjacency(), g.adjacency());
  const double f2 = fram::frobenius_inner(*g.features(), *g.features());
  CHECK(fram::objective(p, Matrix::identity(5)) == doctest::Approx(0.5 * a2 + 0.7 * f2).epsilon(1e-14));
  CHECK_THROWS_AS(fram::objective(p, Matrix(4, 4)), fram::DimensionError);
}

TEST_CASE("objective matches the quadruple-loop expansion") {
  fram::CounterRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const MatchingProblem p(random_graph(rng, 4, 2), random_graph(rng, 4, 2), rng.uniform(0, 2));
    const Matrix perm = fram::assignment_to_matrix(fram::random_permutation(4, rng));
    CHECK(fram::objective(p, perm) ==
          doctest::Approx(fram::oracle::objective_expanded(p, perm)).epsilon(1e-12));
    const Matrix relaxed = fram::test::random_nonnegative(rng, 4, 4);
    CHECK(fram::objective(p, relaxed) ==
          doctest::Approx(fram::oracle::objective_expanded(p, relaxed)).epsilon(1e-12));
  }
}

TEST_CASE("objective is symmetric under swapping the graphs when lambda is zero") {
  fram::CounterRng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_graph(rng, 6);
    const auto h = random_graph(rng, 6);
    const Matrix n = fram::test::random_nonnegative(rng, 6, 6);
    const double forward = fram::objective(MatchingProblem(g, h, 0.0), n);
    const double backward = fram::objective(MatchingProblem(h, g, 0.0), n.transposed());
    CHECK(forward == doctest::Approx(backward).epsilon(1e-12));
  }
}

TEST_CASE("self-match objective is maximized at the identity") {
  fram::CounterRng rng(7);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto g = random_graph(rng, n);
      const MatchingProblem p(g, g, 0.0);
      const double at_identity = fram::objective(p, Matrix::identity(n));
      for (const auto& perm : fram::oracle::all_permutations(n))
        CHECK(fram::objective(p, fram::assignment_to_matrix(perm)) <= at_identity + 1e-12);
    }
  }
}
