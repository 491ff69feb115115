#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "fram/assignment.hpp"
#include "fram/errors.hpp"
#include "fram/projection.hpp"
#include "fram/rng.hpp"
#include "oracles.hpp"
#include "support.hpp"

using fram::Matrix;
using fram::test::max_abs;

namespace {

Matrix random_doubly_stochastic(fram::CounterRng& rng, std::size_t n) {
  // Convex combination of random permutation matrices.
  Matrix d(n, n);
  double remaining = 1.0;
  for (int k = 0; k < 4; ++k) {
    const double w = k == 3 ? remaining : remaining * rng.uniform(0.2, 0.8);
    remaining -= w;
    d += w * fram::assignment_to_matrix(fram::random_permutation(n, rng));
  }
  return d;
}

fram::SdsnConfig config(double theta, double gamma = 1e-3, int iters = 1000) {
  fram::SdsnConfig c;
  c.theta = theta;
  c.gamma_threshold = gamma;
  c.max_iterations = iters;
  return c;
}

}  // namespace

TEST_CASE("affine projection examples") {
  fram::CounterRng rng(21);
  const Matrix ds = random_doubly_stochastic(rng, 5);
  CHECK(fram::frobenius_distance(fram::project_affine(ds), ds) <= 1e-14);
  CHECK(fram::project_affine(Matrix(2, 2)) == Matrix{{0.5, 0.5}, {0.5, 0.5}});
  CHECK_THROWS_AS(fram::project_affine(Matrix(2, 3)), fram::DimensionError);
}

TEST_CASE("affine projection agrees with the KKT solve on asymmetric inputs") {
  fram::CounterRng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix x = fram::test::random_matrix(rng, 5, 5, -2.0, 3.0);
    CHECK(fram::frobenius_distance(fram::project_affine(x),
                                   fram::oracle::affine_projection_kkt(x)) <= 1e-10);
  }
}

TEST_CASE("affine projection is feasible, idempotent and orthogonal") {
  fram::CounterRng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = fram::test::random_matrix(rng, 50, 50, -1.0, 2.0);
    const Matrix y = fram::project_affine(x);
    CHECK(max_abs(fram::row_sums(y), 1.0) <= 1e-10);
    CHECK(max_abs(fram::col_sums(y), 1.0) <= 1e-10);
    CHECK(fram::frobenius_distance(fram::project_affine(y), y) <= 1e-10);
    // X − P1(X) lies in span{u1ᵀ + 1vᵀ}, whose orthogonal complement is the
    // zero-marginal subspace.
    CHECK(fram::frobenius_norm(fram::project_zero_marginals(x - y)) <= 1e-9);
  }
}

TEST_CASE("nonnegative projection") {
  fram::CounterRng rng(24);
  const Matrix x = fram::test::random_nonnegative(rng, 4, 4);
  CHECK(fram::project_nonnegative(x) == x);
  CHECK(fram::project_nonnegative(-1.0 * Matrix::identity(3)) == Matrix(3, 3));
  CHECK(fram::project_nonnegative(Matrix{{-1, 2}, {3, -4}}) == Matrix{{0, 2}, {3, 0}});
}

TEST_CASE("zero-marginal projection") {
  fram::CounterRng rng(25);
  const Matrix z = fram::test::random_zero_marginal(rng, 6);
  CHECK(fram::frobenius_distance(fram::project_zero_marginals(z), z) <= 1e-14);
  CHECK(fram::frobenius_norm(fram::project_zero_marginals(Matrix(3, 3, 1.0))) <= 1e-15);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix x = fram::test::random_matrix(rng, 4, 4);
    const Matrix p3 = fram::project_zero_marginals(x);
    CHECK(fram::frobenius_distance(p3, fram::project_affine(x) - Matrix(4, 4, 0.25)) <= 1e-14);
    CHECK(max_abs(fram::row_sums(p3)) <= 1e-10);
    CHECK(max_abs(fram::col_sums(p3)) <= 1e-10);
    CHECK(fram::frobenius_distance(fram::project_zero_marginals(p3), p3) <= 1e-14);
  }
  CHECK_THROWS_AS(fram::project_zero_marginals(Matrix(1, 2)), fram::DimensionError);
}

TEST_CASE("mass excess") {
  fram::CounterRng rng(26);
  CHECK(fram::mass_excess(random_doubly_stochastic(rng, 7)) == doctest::Approx(0.0).epsilon(1e-14));
  for (std::size_t n : {2u, 5u, 13u})
    CHECK(fram::mass_excess(Matrix(n, n, 2.0 / static_cast<double>(n))) ==
          doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fram::mass_excess(Matrix{{1.2, 0}, {0, 1}}) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("sdsn config validation") {
  CHECK_NOTHROW(fram::SdsnConfig{}.validate());
  CHECK_THROWS_AS(config(0.0).validate(), fram::ValidationError);
  CHECK_THROWS_AS(config(INFINITY).validate(), fram::ValidationError);
  CHECK_THROWS_AS(config(2.0, 0.0).validate(), fram::ValidationError);
  CHECK_THROWS_AS(config(2.0, 1.0).validate(), fram::ValidationError);
  CHECK_THROWS_AS(config(2.0, 1e-3, 0).validate(), fram::ValidationError);
}

TEST_CASE("sdsn on the identity with large theta stays at the identity") {
  const Matrix i3 = Matrix::identity(3);
  const auto r = fram::sdsn(i3, config(50.0));
  CHECK(r.trace.converged);
  CHECK(fram::test::max_abs((r.matrix - i3).data()) <= 1e-3);
  const auto exact = fram::dykstra_project(25.0 * i3);
  CHECK(fram::frobenius_distance(exact.matrix, i3) <= 1e-10);
}

TEST_CASE("sdsn with vanishing theta returns the barycenter") {
  fram::CounterRng rng(27);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(10);
    const auto r = fram::sdsn(fram::test::random_nonnegative(rng, n, n), config(1e-6));
    CHECK(fram::frobenius_distance(r.matrix, Matrix::uniform(n)) <= 1e-3);
  }
}

TEST_CASE("sdsn edge cases") {
  const auto zero = fram::sdsn(Matrix(4, 4), config(2.0));
  CHECK(zero.matrix == Matrix::uniform(4));
  CHECK(zero.trace.converged);
  CHECK(zero.trace.iterations == 0);

  CHECK_THROWS_WITH_AS(fram::sdsn(Matrix{{1, -1}, {0, 1}}, config(2.0)),
                       "SDSN requires nonnegative input", fram::ValidationError);
  CHECK_THROWS_AS(fram::sdsn(Matrix(2, 3, 1.0), config(2.0)), fram::DimensionError);

  fram::CounterRng rng(28);
  const auto capped = fram::sdsn(fram::test::random_nonnegative(rng, 8, 8), config(2.0, 1e-12, 3));
  CHECK_FALSE(capped.trace.converged);
  CHECK(capped.trace.iterations == 3);
}

TEST_CASE("sdsn output is nonnegative with gamma below threshold") {
  fram::CounterRng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(15);
    const auto r = fram::sdsn(fram::test::random_nonnegative(rng, n, n), config(2.0));
    REQUIRE(r.trace.converged);
    CHECK(fram::min_entry(r.matrix) >= 0.0);
    CHECK(r.trace.gamma_history.back() <= 1e-3);
    CHECK(r.trace.gamma_history.size() == static_cast<std::size_t>(r.trace.iterations - 1));
  }
}

TEST_CASE("sdsn gamma history is nonincreasing") {
  fram::CounterRng rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng.below(15);
    const double theta = std::array{1.0, 2.0, 10.0}[rng.below(3)];
    const auto r = fram::sdsn(fram::test::random_nonnegative(rng, n, n), config(theta, 1e-9));
    const auto& g = r.trace.gamma_history;
    for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] <= g[k - 1] + 1e-9);
  }
}

TEST_CASE("sdsn is invariant to positive scaling of its input") {
  fram::CounterRng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(12);
    const Matrix x = fram::test::random_nonnegative(rng, n, n);
    const double w = std::exp(rng.uniform(-10.0, 10.0));
    const auto a = fram::sdsn(x, config(2.0));
    const auto b = fram::sdsn(w * x, config(2.0));
    CHECK(fram::frobenius_distance(a.matrix, b.matrix) <= 1e-12);
  }
}

TEST_CASE("sdsn respects the assignment-error bound") {
  fram::CounterRng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(19);
    const double theta = std::array{1.0, 2.0, 10.0}[rng.below(3)];
    Matrix x = fram::test::random_nonnegative(rng, n, n);
    x *= 1.0 / fram::max_entry(x);
    const auto d = fram::sdsn(x, config(theta, 1e-9));
    const double best = fram::hungarian_max(x).score;
    const double eps = (best - fram::frobenius_inner(d.matrix, x)) / static_cast<double>(n);
    CHECK(eps <= 1.0 / theta);
  }
}

TEST_CASE("fixed-iteration dsn") {
  fram::CounterRng rng(33);
  const Matrix ds = random_doubly_stochastic(rng, 6);
  CHECK(fram::frobenius_distance(fram::dsn_fixed(ds, 17), ds) <= 1e-13);
  CHECK(fram::dsn_fixed(Matrix(5, 5), 1) == Matrix::uniform(5));
  CHECK(fram::dsn_fixed(ds, 0) == ds);
  CHECK_THROWS_AS(fram::dsn_fixed(Matrix(2, 3), 1), fram::DimensionError);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix x = fram::test::random_nonnegative(rng, 10, 10);
    CHECK(fram::mass_excess(fram::dsn_fixed(x, 200)) <=
          fram::mass_excess(fram::dsn_fixed(x, 30)) + 1e-15);
  }
}

TEST_CASE("dykstra examples") {
  fram::CounterRng rng(34);
  const Matrix ds = random_doubly_stochastic(rng, 5);
  const auto fixed = fram::dykstra_project(ds);
  CHECK(fixed.converged);
  CHECK(fram::frobenius_distance(fixed.matrix, ds) <= 1e-12);

  const auto two = fram::dykstra_project(Matrix{{2, 0}, {0, 2}});
  CHECK(two.converged);
  CHECK(fram::frobenius_distance(two.matrix, Matrix::identity(2)) <= 1e-12);

  const auto capped = fram::dykstra_project(fram::test::random_matrix(rng, 6, 6), 1e-30, 5);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 5);
}

TEST_CASE("dykstra agrees with the Birkhoff-weight solve at n = 3") {
  fram::CounterRng rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = fram::test::random_matrix(rng, 3, 3, -0.5, 1.5);
    const auto d = fram::dykstra_project(x);
    REQUIRE(d.converged);
    CHECK(fram::frobenius_distance(d.matrix, fram::oracle::birkhoff_projection_n3(x)) <= 1e-6);
  }
}

TEST_CASE("dykstra output is doubly stochastic") {
  fram::CounterRng rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = fram::dykstra_project(fram::test::random_matrix(rng, 6, 6, -1.0, 2.0));
    REQUIRE(d.converged);
    CHECK(fram::min_entry(d.matrix) >= 0.0);
    CHECK(max_abs(fram::row_sums(d.matrix), 1.0) <= 1e-9);
    CHECK(max_abs(fram::col_sums(d.matrix), 1.0) <= 1e-9);
  }
}

TEST_CASE("dykstra on a strongly scaled input lands on the dominant permutation") {
  // If the best permutation beats every other one by more than n after
  // scaling, the projection is that permutation matrix. At this scale the
  // iterate can stall for many rounds before the corrections catch up.
  fram::CounterRng rng(38);
  int checked = 0;
  while (checked < 30) {
    const std::size_t n = 3 + rng.below(4);
    const Matrix x = fram::test::random_nonnegative(rng, n, n);
    double best = -1.0, second = -1.0;
    fram::Permutation argmax;
    for (const auto& p : fram::oracle::all_permutations(n)) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += x(i, p[i]);
      if (s > best) {
        second = best;
        best = s;
        argmax = p;
      } else if (s > second) {
        second = s;
      }
    }
    if (best - second < 0.05) continue;
    ++checked;
    const auto d = fram::dykstra_project(500.0 * x);
    REQUIRE(d.converged);
    CHECK(fram::frobenius_distance(d.matrix, fram::assignment_to_matrix(argmax)) <= 1e-9);
  }
}

TEST_CASE("sdsn lands within 1e-2 of the exact projection of its scaled input") {
  fram::CounterRng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = fram::test::random_nonnegative(rng, 8, 8);
    const auto d = fram::sdsn(x, config(2.0, 1e-9));
    Matrix scaled = x;
    scaled *= 1.0 / fram::max_entry(x);
    const auto exact = fram::dykstra_project(scaled, 1e-12, 100000);
    CHECK(fram::frobenius_distance(d.matrix, exact.matrix) <= 1e-2);
  }
}
