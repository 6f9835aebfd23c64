#pragma once

// The homogeneous strict system c_i - c_j + d_i det(A_i - A_j) + <A_i - A_j, B_i J> < 0
// over the 13 unknowns (c2..c5, d1..d5, q4, q5), with c1 = 0, P = 0, z1 = y2 = 0.

#include <array>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "t5/configuration.hpp"
#include "t5/rat_matrix.hpp"

namespace t5 {

inline constexpr std::size_t kSystemRows = 20;
inline constexpr std::size_t kSystemCols = 13;

/// The 14 scalars fixed before the system becomes linear.
struct SearchParams {
  Rational y5, z3, z4;
  std::array<Rational, kPoints> kappa;
  Vec2<Rational> p3, p4, p5;

  static SearchParams baseline();
  /// Scalar names in grid order: y5 z3 z4 kappa1..kappa5 p31 p32 p41 p42 p51 p52.
  static const std::array<std::string, 14>& names();
  Rational& at(std::size_t i);
  const Rational& at(std::size_t i) const;

  /// Full parameter vector with z1 = y2 = 0 and the given q4, q5.
  ParameterVector with_q(const Vec2<Rational>& q4, const Vec2<Rational>& q5) const;
};

struct InequalitySystem {
  RatMatrix matrix;                                 // 20 x 13
  std::vector<std::pair<int, int>> row_labels;      // ordered (i, j), i != j, 1-based
  std::vector<std::string> column_labels;           // c2..c5, d1..d5, q41, q42, q51, q52
  SearchParams params;

  std::vector<Rational> evaluate(std::span<const Rational> x) const { return matrix * x; }
};

/// Column labels in unknown order.
const std::vector<std::string>& system_column_labels();

/// Throws DegenerateParameters when z3 = 0.
InequalitySystem build_system(const SearchParams& params);

/// The unknown vector for given constants: (c2..c5, d1..d5, q41, q42, q51, q52).
std::vector<Rational> pack_unknowns(std::span<const Rational> c, std::span<const Rational> d, const Vec2<Rational>& q4,
                                    const Vec2<Rational>& q5);

struct FeasibleSolution {
  std::vector<Rational> x;  // 13 entries
  Rational margin;          // max_row (A x)_row < 0
};

/// Farkas certificate: y >= 0, y != 0, y^T A = 0.
struct Infeasible {
  std::vector<Rational> y;
};

using StrictResult = std::variant<FeasibleSolution, Infeasible>;

/// Decides A x < 0 through the equivalent A x <= -1. Works for any matrix shape.
StrictResult solve_strict(const RatMatrix& a);
inline StrictResult solve_strict(const InequalitySystem& s) { return solve_strict(s.matrix); }

bool verify_certificate(const RatMatrix& a, const Infeasible& cert);

struct GridAxis {
  std::vector<Rational> values;
};

/// One axis per SearchParams scalar, in SearchParams::names() order.
struct GridSpec {
  std::array<GridAxis, 14> axes;

  static GridSpec singleton(const SearchParams& p);
  std::size_t size() const;
};

struct GridHit {
  std::size_t index;  // position in grid enumeration order
  SearchParams params;
  FeasibleSolution solution;
};

struct GridResult {
  std::vector<GridHit> hits;
  std::size_t evaluated = 0;
  std::vector<std::string> skipped;  // reason per skipped point
};

/// Enumerates the grid with the last axis varying fastest; points with some
/// kappa <= 1 are skipped unless allowed.
GridResult grid_search(const GridSpec& grid, bool allow_kappa_le_one = false);

}  // namespace t5
