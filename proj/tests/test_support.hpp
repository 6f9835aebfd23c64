#pragma once

// Shared helpers for the unit and acceptance suites: seeded random rationals
// and a brute-force determinant oracle independent of the Bareiss kernel.

#include <random>
#include <vector>

#include "t5/configuration.hpp"
#include "t5/rat_matrix.hpp"

namespace t5::testing {

inline Rational random_rational(std::mt19937_64& rng, long num_range = 9, long den_max = 5) {
  std::uniform_int_distribution<long> num(-num_range, num_range);
  std::uniform_int_distribution<long> den(1, den_max);
  return Rational(num(rng), den(rng));
}

inline RatMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long num_range = 9,
                               long den_max = 5) {
  RatMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng, num_range, den_max);
  return m;
}

inline RatMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, long num_range = 9, long den_max = 5) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = random_rational(rng, num_range, den_max);
  return m;
}

inline std::vector<Rational> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> v(n);
  for (auto& x : v) x = random_rational(rng);
  return v;
}

/// Laplace expansion along the first row. Exponential; only for n <= 8.
inline Rational laplace_det(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational total;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    RatMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    const Rational term = m(0, c) * laplace_det(minor);
    total += (c % 2 ? -term : term);
  }
  return total;
}

/// A random parameter vector away from the degenerate denominators, kappa in (1, 5].
inline ParameterVector random_parameters(std::mt19937_64& rng) {
  for (;;) {
    ParameterVector Y;
    for (std::size_t i = 0; i < kParams; ++i) Y[i] = random_rational(rng, 6, 4);
    std::uniform_int_distribution<long> k(5, 20);
    for (std::size_t i = kKappa1; i <= kKappa5; ++i) Y[i] = Rational(k(rng), 4);
    try {
      (void)derive_dependent(Y);
      return Y;
    } catch (const DegenerateParameters&) {
    }
  }
}

}  // namespace t5::testing
