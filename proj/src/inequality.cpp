#include "t5/inequality.hpp"

#include <sstream>

#include "t5/simplex.hpp"

namespace t5 {

SearchParams SearchParams::baseline() {
  SearchParams s;
  s.y5 = 2;
  s.z3 = 1;
  s.z4 = 4;
  s.kappa = {2, 3, 4, 3, 2};
  s.p3 = {1, 0};
  s.p4 = {1, 1};
  s.p5 = {0, 1};
  return s;
}

const std::array<std::string, 14>& SearchParams::names() {
  static const std::array<std::string, 14> n{"y5",     "z3",  "z4",  "kappa1", "kappa2", "kappa3", "kappa4",
                                             "kappa5", "p31", "p32", "p41",    "p42",    "p51",    "p52"};
  return n;
}

Rational& SearchParams::at(std::size_t i) {
  switch (i) {
    case 0: return y5;
    case 1: return z3;
    case 2: return z4;
    case 8: return p3[0];
    case 9: return p3[1];
    case 10: return p4[0];
    case 11: return p4[1];
    case 12: return p5[0];
    case 13: return p5[1];
    default:
      if (i >= 3 && i < 8) return kappa[i - 3];
      throw ShapeError("SearchParams index out of range");
  }
}

const Rational& SearchParams::at(std::size_t i) const { return const_cast<SearchParams*>(this)->at(i); }

ParameterVector SearchParams::with_q(const Vec2<Rational>& q4, const Vec2<Rational>& q5) const {
  ParameterVector Y;
  Y[kZ1] = 0;
  Y[kY2] = 0;
  Y[kZ3] = z3;
  Y[kZ4] = z4;
  Y[kY5] = y5;
  Y[kP31] = p3[0];
  Y[kP32] = p3[1];
  Y[kP41] = p4[0];
  Y[kP42] = p4[1];
  Y[kP51] = p5[0];
  Y[kP52] = p5[1];
  Y[kQ41] = q4[0];
  Y[kQ42] = q4[1];
  Y[kQ51] = q5[0];
  Y[kQ52] = q5[1];
  for (std::size_t j = 0; j < kPoints; ++j) Y[kKappa1 + j] = kappa[j];
  return Y;
}

const std::vector<std::string>& system_column_labels() {
  static const std::vector<std::string> labels{"c2", "c3", "c4", "c5", "d1", "d2", "d3",
                                               "d4", "d5", "q41", "q42", "q51", "q52"};
  return labels;
}

InequalitySystem build_system(const SearchParams& params) {
  if (params.z3.is_zero()) throw DegenerateParameters("degenerate parameters: z3 = 0");

  const RatMatrix origin = RatMatrix::zero(4, 2);
  const RatMatrix J = rotation_j();
  const auto x0 = assemble_X(1, params.with_q({0, 0}, {0, 0}), origin);
  std::array<RatMatrix, kPoints> a;
  for (std::size_t j = 0; j < kPoints; ++j) a[j] = upper_block(x0[j]);

  // The lower blocks are linear in (q41, q42, q51, q52): sample unit vectors.
  std::array<std::array<RatMatrix, kPoints>, 4> bj;
  for (std::size_t k = 0; k < 4; ++k) {
    Vec2<Rational> q4{0, 0}, q5{0, 0};
    (k < 2 ? q4 : q5)[k % 2] = 1;
    const auto xk = assemble_X(1, params.with_q(q4, q5), origin);
    for (std::size_t j = 0; j < kPoints; ++j) bj[k][j] = lower_block(xk[j]) * J;
  }

  InequalitySystem sys;
  sys.params = params;
  sys.column_labels = system_column_labels();
  sys.matrix = RatMatrix::zero(kSystemRows, kSystemCols);
  std::size_t row = 0;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      if (i == j) continue;
      sys.row_labels.emplace_back(i, j);
      if (i >= 2) sys.matrix(row, i - 2) += 1;
      if (j >= 2) sys.matrix(row, j - 2) -= 1;
      const RatMatrix diff = a[i - 1] - a[j - 1];
      sys.matrix(row, 4 + (i - 1)) = determinant(diff);
      for (std::size_t k = 0; k < 4; ++k) sys.matrix(row, 9 + k) = frobenius(diff, bj[k][i - 1]);
      ++row;
    }
  return sys;
}

std::vector<Rational> pack_unknowns(std::span<const Rational> c, std::span<const Rational> d, const Vec2<Rational>& q4,
                                    const Vec2<Rational>& q5) {
  if (c.size() != 5 || d.size() != 5) throw ShapeError("pack_unknowns: expected five c and five d values");
  std::vector<Rational> x;
  x.reserve(kSystemCols);
  x.insert(x.end(), c.begin() + 1, c.end());
  x.insert(x.end(), d.begin(), d.end());
  x.insert(x.end(), {q4[0], q4[1], q5[0], q5[1]});
  return x;
}

StrictResult solve_strict(const RatMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();

  // x = u - v, A u - A v + s = -1 with u, v, s >= 0.
  RatMatrix e(m, 2 * n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      e(i, j) = a(i, j);
      e(i, n + j) = -a(i, j);
    }
    e(i, 2 * n + i) = 1;
  }
  const std::vector<Rational> minus_one(m, Rational(-1));
  if (auto sol = find_nonnegative(e, minus_one)) {
    FeasibleSolution fs;
    fs.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) fs.x[j] = (*sol)[j] - (*sol)[n + j];
    const auto ax = a * std::span<const Rational>(fs.x);
    for (std::size_t i = 0; i < m; ++i) {
      if (ax[i].sign() >= 0) throw Error("solve_strict: witness failed exact verification");
      if (i == 0 || ax[i] > fs.margin) fs.margin = ax[i];
    }
    return fs;
  }

  // Farkas alternative: y >= 0, A^T y = 0, sum y = 1.
  RatMatrix g(n + 1, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(j, i) = a(i, j);
    g(n, i) = 1;
  }
  std::vector<Rational> rhs(n + 1);
  rhs[n] = 1;
  auto y = find_nonnegative(g, rhs);
  if (!y) throw Error("solve_strict: neither a witness nor a Farkas certificate was found");
  Infeasible cert{std::move(*y)};
  if (!verify_certificate(a, cert)) throw Error("solve_strict: Farkas certificate failed exact verification");
  return cert;
}

bool verify_certificate(const RatMatrix& a, const Infeasible& cert) {
  if (cert.y.size() != a.rows()) return false;
  bool nonzero = false;
  for (const auto& v : cert.y) {
    if (v.sign() < 0) return false;
    if (!v.is_zero()) nonzero = true;
  }
  if (!nonzero) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational s;
    for (std::size_t i = 0; i < a.rows(); ++i) s += cert.y[i] * a(i, j);
    if (!s.is_zero()) return false;
  }
  return true;
}

GridSpec GridSpec::singleton(const SearchParams& p) {
  GridSpec g;
  for (std::size_t i = 0; i < 14; ++i) g.axes[i].values = {p.at(i)};
  return g;
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

GridResult grid_search(const GridSpec& grid, bool allow_kappa_le_one) {
  GridResult result;
  const std::size_t total = grid.size();
  for (std::size_t index = 0; index < total; ++index) {
    SearchParams p;
    std::size_t rem = index;
    for (std::size_t a = 14; a-- > 0;) {
      const auto& vals = grid.axes[a].values;
      p.at(a) = vals[rem % vals.size()];
      rem /= vals.size();
    }
    std::ostringstream where;
    where << "grid point " << index << ": ";
    if (!allow_kappa_le_one) {
      bool bad = false;
      for (std::size_t j = 0; j < kPoints; ++j)
        if (p.kappa[j] <= Rational(1)) bad = true;
      if (bad) {
        result.skipped.push_back(where.str() + "kappa <= 1");
        continue;
      }
    }
    InequalitySystem sys;
    try {
      sys = build_system(p);
    } catch (const DegenerateParameters& e) {
      result.skipped.push_back(where.str() + e.what());
      continue;
    }
    ++result.evaluated;
    const StrictResult r = solve_strict(sys);
    if (const auto* fs = std::get_if<FeasibleSolution>(&r)) result.hits.push_back({index, p, *fs});
  }
  return result;
}

}  // namespace t5
