#include <random>

#include "doctest.h"
#include "t5/errors.hpp"
#include "t5/rat_matrix.hpp"
#include "test_support.hpp"

using namespace t5;
using t5::testing::laplace_det;
using t5::testing::random_matrix;
using t5::testing::random_vector;

TEST_CASE("rational canonical form and parsing") {
  CHECK(Rational(6, -4).str() == "-3/2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational::parse("-7.5") == Rational(-15, 2));
  CHECK(Rational::parse("58") == Rational(58));
  CHECK(Rational::parse(" 10/4 ").str() == "5/2");
  CHECK(Rational::parse("1e-3") == Rational(1, 1000));
  CHECK(Rational::parse("2.5E2") == Rational(250));
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), SingularMatrix);
  CHECK(Rational::from_double(0.375) == Rational(3, 8));
}

TEST_CASE("determinant examples") {
  CHECK(determinant(RatMatrix::identity(8)) == Rational(1));
  CHECK(determinant(RatMatrix{{0, -1}, {1, 0}}) == Rational(1));
  const RatMatrix tri{{2, 1, 0, 0}, {1, 2, 1, 0}, {0, 1, 2, 1}, {0, 0, 1, 2}};
  CHECK(laplace_det(tri) == Rational(5));
  CHECK(determinant(tri) == Rational(5));
  CHECK_THROWS_AS(determinant(RatMatrix(2, 3)), ShapeError);
}

TEST_CASE("determinant agrees with Laplace expansion and is multiplicative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const RatMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    CHECK(determinant(a) == laplace_det(a));
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
  }
}

TEST_CASE("rank examples") {
  CHECK(rank(RatMatrix::zero(8, 20)) == 0);
  const std::vector<Rational> a{1, Rational(2, 3), -4}, b{5, 0, Rational(-1, 2), 7};
  CHECK(rank(RatMatrix::outer(a, b)) == 1);
  CHECK(rank(RatMatrix::identity(5)) == 5);
}

TEST_CASE("rank-nullity through the exact nullspace") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    // Product of thin factors gives controlled rank.
    const std::size_t k = 1 + trial % 4;
    const RatMatrix m = random_matrix(rng, 6, k) * random_matrix(rng, k, 7);
    const RatMatrix ker = nullspace(m);
    CHECK(rank(m) + ker.cols() == m.cols());
    CHECK((m * ker).is_zero());
    CHECK(rank(ker) == ker.cols());
  }
}

TEST_CASE("adjugate examples and identity") {
  CHECK(adjugate(RatMatrix::identity(8)) == RatMatrix::identity(8));
  const Rational a(3), b(-2, 5), c(7), d(1, 3);
  CHECK(adjugate(RatMatrix{{a, b}, {c, d}}) == RatMatrix{{d, -b}, {-c, a}});

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const RatMatrix m = random_matrix(rng, 5, 5);
    CHECK(m * adjugate(m) == determinant(m) * RatMatrix::identity(5));
  }
  // Rank 7 in dimension 8: adjugate has rank one and still satisfies M adj M = 0.
  for (int trial = 0; trial < 3; ++trial) {
    const RatMatrix m = random_matrix(rng, 8, 7) * random_matrix(rng, 7, 8);
    REQUIRE(rank(m) == 7);
    const RatMatrix adj = adjugate(m);
    CHECK(rank(adj) == 1);
    CHECK((m * adj).is_zero());
  }
}

TEST_CASE("matrix determinant lemma with the adjugate") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    RatMatrix a = random_matrix(rng, 8, 8);
    if (trial % 2) a = random_matrix(rng, 8, 7) * random_matrix(rng, 7, 8);  // singular case too
    const auto alpha = random_vector(rng, 8), beta = random_vector(rng, 8);
    const RatMatrix lhs = a + RatMatrix::outer(alpha, beta);
    CHECK(determinant(lhs) == determinant(a) + dot(adjugate(a) * std::span<const Rational>(alpha), beta));
  }
}

TEST_CASE("inverse") {
  CHECK(inverse(RatMatrix::identity(20)) == RatMatrix::identity(20));
  std::vector<Rational> twos(20, Rational(2)), halves(20, Rational(1, 2));
  CHECK(inverse(RatMatrix::diagonal(twos)) == RatMatrix::diagonal(halves));
  std::mt19937_64 rng(15);
  const RatMatrix m = random_matrix(rng, 20, 20);
  REQUIRE(!determinant(m).is_zero());
  CHECK(m * inverse(m) == RatMatrix::identity(20));
  CHECK_THROWS_AS(inverse(RatMatrix{{1, 2}, {2, 4}}), SingularMatrix);
}

TEST_CASE("characteristic polynomial") {
  const auto zero3 = char_poly(RatMatrix::zero(3, 3));
  CHECK(zero3 == std::vector<Rational>{0, 0, 0, 1});
  const std::vector<Rational> d{-1, -1, 0, 5};
  // (l+1)^2 l (l-5) = l^4 - 3l^3 - 9l^2 - 5l
  CHECK(char_poly(RatMatrix::diagonal(d)) == std::vector<Rational>{0, -5, -9, -3, 1});

  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const RatMatrix m = random_matrix(rng, n, n);
    const auto c = char_poly(m);
    // c(0) = det(-m) and c(n-1) = -trace(m).
    CHECK(c[0] == ((n % 2) ? -determinant(m) : determinant(m)));
    CHECK(c[n - 1] == -m.trace());
    // Cayley-Hamilton.
    RatMatrix acc = RatMatrix::zero(n, n), power = RatMatrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
      acc += c[k] * power;
      power = power * m;
    }
    CHECK(acc.is_zero());
  }
}

TEST_CASE("column-major vectorization") {
  const RatMatrix m{{1, 2}, {3, 4}};
  CHECK(vec(m) == RatMatrix{{1}, {3}, {2}, {4}});
  CHECK(vec(RatMatrix::zero(4, 2)).is_zero());
  std::mt19937_64 rng(17);
  const RatMatrix x = random_matrix(rng, 4, 2);
  CHECK(unvec(vec(x)) == x);
  CHECK_THROWS_AS(vec(RatMatrix(3, 2)), ShapeError);
  CHECK_THROWS_AS(unvec(RatMatrix(5, 1)), ShapeError);
}

TEST_CASE("bounds checking") {
  RatMatrix m(2, 2);
  CHECK_THROWS_AS(m(2, 0), ShapeError);
  CHECK_THROWS_AS(m(0, 2), ShapeError);
  CHECK_THROWS_AS(RatMatrix::from_rows(2, 2, {1, 2, 3}), ShapeError);
}
