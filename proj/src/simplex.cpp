#include "t5/simplex.hpp"

#include "t5/errors.hpp"

namespace t5 {

std::optional<std::vector<Rational>> find_nonnegative(const RatMatrix& E, std::span<const Rational> f) {
  const std::size_t m = E.rows(), n = E.cols();
  if (f.size() != m) throw ShapeError("find_nonnegative: rhs length mismatch");
  if (m == 0) return std::vector<Rational>(n);

  // Tableau columns: n structural, m artificial, then the rhs.
  const std::size_t width = n + m + 1, rhs = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = f[i].sign() < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? -E(i, j) : E(i, j);
    t[i][n + i] = 1;
    t[i][rhs] = flip ? -f[i] : f[i];
    basis[i] = n + i;
  }
  // Reduced costs of min sum(artificials): cost row = -sum of constraint rows
  // over structural columns, zero on artificials.
  std::vector<Rational> cost(width);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (j < n || j == rhs) cost[j] -= t[i][j];

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs; ++j)
      if (cost[j].sign() < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      const Rational ratio = t[i][rhs] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase 1 is bounded below by zero, so an entering column always has a
    // positive entry.
    if (leave == m) throw Error("find_nonnegative: unbounded phase-1 direction");

    const Rational piv = t[leave][enter].inv();
    for (auto& x : t[leave]) x *= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (!t[leave][j].is_zero()) t[i][j] -= factor * t[leave][j];
    }
    if (!cost[enter].is_zero()) {
      const Rational factor = cost[enter];
      for (std::size_t j = 0; j < width; ++j)
        if (!t[leave][j].is_zero()) cost[j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  // -cost[rhs] is the remaining artificial mass.
  if (!cost[rhs].is_zero()) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][rhs];
  return x;
}

}  // namespace t5
