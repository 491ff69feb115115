#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "fram/errors.hpp"
#include "fram/matrix.hpp"
#include "fram/rng.hpp"
#include "support.hpp"

using fram::Matrix;

TEST_CASE("matrix construction validates shape and values") {
  CHECK_THROWS_AS(Matrix(0, 3), fram::DimensionError);
  CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>{1, 2, 3}), fram::DimensionError);
  CHECK_THROWS_AS(Matrix(1, 1, std::vector<double>{NAN}), fram::ValidationError);
  CHECK_THROWS_AS(Matrix(1, 2, INFINITY), fram::ValidationError);
  CHECK_THROWS_AS((Matrix{{1, 2}, {3}}), fram::DimensionError);

  const Matrix m{{1, 2, 3}, {4, 5, 6}};
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m(1, 2) == 6);
  CHECK(m.transposed()(2, 1) == 6);
  CHECK(m.transposed().rows() == 3);
}

TEST_CASE("frobenius inner product") {
  CHECK(fram::frobenius_inner(Matrix::identity(2), Matrix::identity(2)) == 2.0);
  fram::CounterRng rng(1);
  const Matrix x = fram::test::random_matrix(rng, 3, 4);
  CHECK(fram::frobenius_inner(x, Matrix(3, 4)) == 0.0);
  CHECK(fram::frobenius_inner(Matrix{{1, 2}, {3, 4}}, Matrix{{1, 1}, {1, 1}}) == 10.0);
  CHECK_THROWS_AS(fram::frobenius_inner(Matrix(2, 2), Matrix(2, 3)), fram::DimensionError);
}

TEST_CASE("frobenius norm") {
  CHECK(fram::frobenius_norm(Matrix::identity(3)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(fram::frobenius_norm(Matrix(4, 4)) == 0.0);
  CHECK(fram::frobenius_norm(Matrix{{3, 4}}) == 5.0);
  CHECK(fram::frobenius_distance(Matrix{{3, 4}}, Matrix{{0, 0}}) == 5.0);
}

TEST_CASE("total, row and column sums") {
  CHECK(fram::total_sum(Matrix::identity(2)) == 2.0);
  CHECK(fram::total_sum(Matrix::uniform(4)) == 4.0);
  CHECK(fram::total_sum(Matrix{{1, 2}, {3, 4}}) == 10.0);

  CHECK(fram::row_sums(Matrix::identity(3)) == std::vector<double>{1, 1, 1});
  CHECK(fram::col_sums(Matrix::uniform(2)) == std::vector<double>{1, 1});
  CHECK(fram::row_sums(Matrix{{1, 2}, {3, 4}}) == std::vector<double>{3, 7});
  CHECK(fram::col_sums(Matrix{{1, 2}, {3, 4}}) == std::vector<double>{4, 6});
}

TEST_CASE("norm squared matches the inner product within 8 ulp") {
  fram::CounterRng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = fram::test::random_matrix(rng, 20, 20);
    const double norm = fram::frobenius_norm(a);
    CHECK(fram::test::ulp_distance(norm * norm, fram::frobenius_inner(a, a)) <= 8);
  }
}

TEST_CASE("total sum agrees with row and column sums within 8 ulp") {
  fram::CounterRng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = fram::test::random_matrix(rng, 20, 20, 0.0, 1.0);
    const auto r = fram::row_sums(a);
    const auto c = fram::col_sums(a);
    const double total = fram::total_sum(a);
    CHECK(fram::test::ulp_distance(total, std::accumulate(r.begin(), r.end(), 0.0)) <= 8);
    CHECK(fram::test::ulp_distance(total, std::accumulate(c.begin(), c.end(), 0.0)) <= 8);
  }
}

TEST_CASE("matrix arithmetic and helpers") {
  const Matrix a{{1, -2}, {3, 4}};
  CHECK(a + a == 2.0 * a);
  CHECK(a - a == Matrix(2, 2));
  CHECK(fram::clamp_below(a, 0.0) == Matrix{{1, 0}, {3, 4}});
  CHECK(fram::max_entry(a) == 4);
  CHECK(fram::min_entry(a) == -2);
  CHECK(fram::matmul(a, Matrix::identity(2)) == a);
  CHECK(fram::matmul(Matrix{{1, 2}}, Matrix{{3}, {4}}) == Matrix{{11}});
  CHECK_THROWS_AS(fram::matmul(a, Matrix(3, 1)), fram::DimensionError);
  CHECK_THROWS_AS(Matrix(a) += Matrix(1, 2), fram::DimensionError);
  CHECK_THROWS_AS(fram::require_square(Matrix(2, 3), "test"), fram::DimensionError);
}

TEST_CASE("counter rng is a pure function of seed, stream and counter") {
  fram::CounterRng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 64; ++i) {
    va.push_back(a());
    vb.push_back(b());
    vc.push_back(c());
    vd.push_back(d());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
  CHECK(a.counter() == 64);
}

TEST_CASE("rng uniform range and moments") {
  fram::CounterRng rng(5);
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / draws == doctest::Approx(0.5).epsilon(0.01));

  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("random permutation is a bijection and reproducible") {
  fram::CounterRng a(9), b(9);
  const auto p = fram::random_permutation(50, a);
  CHECK(p == fram::random_permutation(50, b));
  CHECK(std::set<std::size_t>(p.begin(), p.end()).size() == 50);
  CHECK(*std::max_element(p.begin(), p.end()) == 49);
}
