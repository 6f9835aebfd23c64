#include "t5/support.hpp"

#include <sstream>

#include "t5/configuration.hpp"
#include "t5/errors.hpp"

namespace t5 {

RatMatrix cofactor(const RatMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw ShapeError("cofactor: expected a 2x2 matrix");
  return RatMatrix{{a(1, 1), -a(1, 0)}, {-a(0, 1), a(0, 0)}};
}

bool SlackTable::all_negative() const {
  for (const auto& s : slack)
    if (s.sign() >= 0) return false;
  return true;
}

const Rational& SlackTable::at(int i, int j) const {
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (pairs[k] == std::make_pair(i, j)) return slack[k];
  throw ShapeError("SlackTable: no pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

namespace {

void check_sizes(std::span<const RatMatrix> points, std::span<const Rational> c, std::span<const Rational> d) {
  if (c.size() != points.size() || d.size() != points.size())
    throw ShapeError("support data: need one c and one d per point");
  for (const auto& x : points)
    if (x.rows() != 4 || x.cols() != 2) throw ShapeError("support data: points must be 4x2");
}

// <A_i, A_i - A_j>
Rational eps_weight(const RatMatrix& ai, const RatMatrix& aj) { return frobenius(ai, ai - aj); }

}  // namespace

SlackTable check_ineq3(std::span<const RatMatrix> points, std::span<const Rational> c, std::span<const Rational> d) {
  check_sizes(points, c, d);
  const RatMatrix J = rotation_j();
  SlackTable t;
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i) {
    const RatMatrix ai = upper_block(points[i]);
    const RatMatrix biJ = lower_block(points[i]) * J;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const RatMatrix diff = ai - upper_block(points[j]);
      t.pairs.emplace_back(i + 1, j + 1);
      t.slack.push_back(c[i] - c[j] + d[i] * determinant(diff) + frobenius(diff, biJ));
    }
  }
  return t;
}

SlackTable check_ineq2(std::span<const RatMatrix> points, std::span<const Rational> c, std::span<const Rational> d,
                       const Rational& eps) {
  SlackTable t = check_ineq3(points, c, d);
  for (std::size_t k = 0; k < t.pairs.size(); ++k) {
    const auto [i, j] = t.pairs[k];
    t.slack[k] += eps * eps_weight(upper_block(points[i - 1]), upper_block(points[j - 1]));
  }
  return t;
}

std::optional<Rational> max_epsilon(std::span<const RatMatrix> points, std::span<const Rational> c,
                                    std::span<const Rational> d) {
  const SlackTable t = check_ineq3(points, c, d);
  if (!t.all_negative()) throw Ineq3Failed("max_epsilon: some ineq3 slack is not strictly negative");
  std::optional<Rational> best;
  for (std::size_t k = 0; k < t.pairs.size(); ++k) {
    const auto [i, j] = t.pairs[k];
    const Rational g = eps_weight(upper_block(points[i - 1]), upper_block(points[j - 1]));
    if (g.sign() <= 0) continue;
    const Rational bound = -t.slack[k] / g;
    if (!best || bound < *best) best = bound;
  }
  return best;
}

Rational default_epsilon(std::span<const RatMatrix> points, std::span<const Rational> c, std::span<const Rational> d) {
  const auto star = max_epsilon(points, c, d);
  return star ? *star / Rational(2) : Rational(1);
}

SupportData support_jet(std::span<const RatMatrix> points, std::span<const Rational> c, std::span<const Rational> d,
                        const Rational& eps) {
  const auto star = max_epsilon(points, c, d);
  if (eps.sign() <= 0) throw EpsilonTooLarge("support_jet: eps must be positive");
  if (star && eps >= *star)
    throw EpsilonTooLarge("support_jet: eps = " + eps.str() + " is not below eps* = " + star->str());

  const RatMatrix J = rotation_j();
  SupportData s;
  s.c.assign(c.begin(), c.end());
  s.d.assign(d.begin(), d.end());
  s.epsilon = eps;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const RatMatrix a = upper_block(points[j]);
    s.Qgrad.push_back(-(eps * a) - lower_block(points[j]) * J - d[j] * cofactor(a));
  }

  for (const auto& r : gradient_residuals(points, s))
    if (!r.is_zero()) throw Ineq1Failed("support_jet: gradient identity violated");

  // Convex interpolation: c_j - c_i > <Q_i, A_j - A_i> + d_i (det A_j - det A_i).
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      const RatMatrix ai = upper_block(points[i]), aj = upper_block(points[j]);
      const Rational rhs = frobenius(s.Qgrad[i], aj - ai) + d[i] * (determinant(aj) - determinant(ai));
      if (!(c[j] - c[i] > rhs))
        throw Ineq1Failed("support_jet: interpolation inequality fails for (i,j) = (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ")");
    }
  return s;
}

std::vector<RatMatrix> gradient_residuals(std::span<const RatMatrix> points, const SupportData& s) {
  const RatMatrix J = rotation_j();
  std::vector<RatMatrix> out;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const RatMatrix a = upper_block(points[j]);
    out.push_back(s.epsilon * a + s.Qgrad[j] + s.d[j] * cofactor(a) + lower_block(points[j]) * J);
  }
  return out;
}

Rational min_separation(std::span<const RatMatrix> points) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const RatMatrix diff = upper_block(points[i]) - upper_block(points[j]);
      const Rational d2 = frobenius(diff, diff);
      if (d2.is_zero())
        throw DuplicatePoints("min_separation: points " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                              " coincide");
      if (!best || d2 < *best) best = d2;
    }
  if (!best) throw DuplicatePoints("min_separation: need at least two points");
  return *best;
}

std::pair<Rational, Rational> sqrt_bracket(const Rational& x, const Rational& tol) {
  if (x.sign() < 0) throw Error("sqrt_bracket: negative argument");
  if (tol.sign() <= 0) throw Error("sqrt_bracket: tolerance must be positive");
  // sqrt(p/q) = sqrt(p q) / q; scale by 4^k so the grid 1/(q 2^k) is below tol.
  const mpz_class p = x.num(), q = x.den();
  mpz_class scale = 1;
  while (Rational(mpq_class(1, q * scale)) > tol) scale *= 2;
  const mpz_class radicand = p * q * scale * scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  const mpz_class den = q * scale;
  const Rational lo(mpq_class(root, den));
  if (root * root == radicand) return {lo, lo};
  return {lo, Rational(mpq_class(root + 1, den))};
}

std::string BudgetReport::describe() const {
  switch (verdict) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    default: return "undecided";
  }
}

BudgetReport perturbation_budget(std::span<const RatMatrix> hessians, std::span<const RatMatrix> baseline,
                                 const Rational& eps, const Rational& cutoff_constant) {
  if (hessians.size() != baseline.size()) throw ShapeError("perturbation_budget: size mismatch");
  if (cutoff_constant.sign() <= 0) throw Error("perturbation_budget: cut-off constant must be positive");
  BudgetReport r;
  r.bound = eps / (Rational(2) * cutoff_constant);
  std::vector<Rational> squares;
  for (std::size_t j = 0; j < hessians.size(); ++j) {
    const RatMatrix diff = hessians[j] - baseline[j];
    squares.push_back(frobenius(diff, diff));
  }
  Rational tol(1, 1 << 10);
  for (int round = 0; round < 8; ++round) {
    r.lower_sum = 0;
    r.upper_sum = 0;
    for (const auto& s : squares) {
      const auto [lo, hi] = sqrt_bracket(s, tol);
      r.lower_sum += lo;
      r.upper_sum += hi;
    }
    if (r.upper_sum < r.bound) {
      r.verdict = BudgetReport::Verdict::Holds;
      return r;
    }
    if (r.lower_sum >= r.bound) {
      r.verdict = BudgetReport::Verdict::Fails;
      return r;
    }
    tol /= Rational(1 << 20);
  }
  return r;
}

}  // namespace t5
