#pragma once

// Support data of the polyconvex function F(A) = eps/2 |A|^2 + G(A, det A):
// the interpolation inequalities, the admissible eps range and the prescribed
// jet (c_j, d_j, Q_j = G_A) of the convex part G at the configuration points.
//
// Points are 4x2 matrices X_j = [A_j ; B_j] where B_j is the raw lower block,
// so that X_j lies on the graph of DF exactly when DF(A_j) = -B_j J.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "t5/rat_matrix.hpp"

namespace t5 {

/// cof A = [[a22, -a21], [-a12, a11]].
RatMatrix cofactor(const RatMatrix& a);

struct SlackTable {
  std::vector<std::pair<int, int>> pairs;  // ordered (i, j), i != j, 1-based
  std::vector<Rational> slack;

  bool all_negative() const;
  const Rational& at(int i, int j) const;
};

/// c_i - c_j + d_i det(A_i - A_j) + <A_i - A_j, B_i J> for all ordered pairs.
SlackTable check_ineq3(std::span<const RatMatrix> points, std::span<const Rational> c, std::span<const Rational> d);

/// Slacks of the eps-dependent form: ineq3 slack + eps <A_i, A_i - A_j>.
SlackTable check_ineq2(std::span<const RatMatrix> points, std::span<const Rational> c, std::span<const Rational> d,
                       const Rational& eps);

/// Supremum eps* of admissible eps, or nullopt when every eps > 0 works.
/// Throws Ineq3Failed unless every ineq3 slack is negative.
std::optional<Rational> max_epsilon(std::span<const RatMatrix> points, std::span<const Rational> c,
                                    std::span<const Rational> d);

struct SupportData {
  std::vector<Rational> c;
  std::vector<Rational> d;
  Rational epsilon;
  std::vector<RatMatrix> Qgrad;  // prescribed G_A at each point
};

/// Q_j = -eps A_j - B_j J - d_j cof A_j. Verifies the gradient identity and the
/// convex interpolation inequalities c_j - c_i > <Q_i, A_j - A_i> + d_i (det A_j - det A_i).
/// Throws EpsilonTooLarge when eps >= eps* or eps <= 0, Ineq1Failed otherwise on failure.
SupportData support_jet(std::span<const RatMatrix> points, std::span<const Rational> c, std::span<const Rational> d,
                        const Rational& eps);

/// The default eps: eps*/2, or 1 when unbounded.
Rational default_epsilon(std::span<const RatMatrix> points, std::span<const Rational> c, std::span<const Rational> d);

/// Residuals eps A_j + Q_j + d_j cof A_j + B_j J (zero for valid data).
std::vector<RatMatrix> gradient_residuals(std::span<const RatMatrix> points, const SupportData& s);

/// Minimum squared Frobenius distance between the upper blocks. Throws DuplicatePoints.
Rational min_separation(std::span<const RatMatrix> points);

/// Verdict for sum_j |H_j - D2F0_j| < eps / (2C) with Frobenius norms; decided
/// exactly by bracketing the square roots with rationals.
struct BudgetReport {
  enum class Verdict { Holds, Fails, Undecided };
  Verdict verdict = Verdict::Undecided;
  Rational bound;                 // eps / (2C)
  Rational lower_sum, upper_sum;  // bracket of sum_j |H_j - D2F0_j|
  std::string describe() const;
};

BudgetReport perturbation_budget(std::span<const RatMatrix> hessians, std::span<const RatMatrix> baseline,
                                 const Rational& eps, const Rational& cutoff_constant);

/// Rational bracket [lo, hi] of sqrt(x) with hi - lo <= tol.
std::pair<Rational, Rational> sqrt_bracket(const Rational& x, const Rational& tol);

}  // namespace t5
