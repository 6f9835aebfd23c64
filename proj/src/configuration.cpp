#include "t5/configuration.hpp"

#include <sstream>
#include <string>

namespace t5 {

const std::array<std::string_view, kParams>& param_names() {
  static const std::array<std::string_view, kParams> names{
      "z1",  "y2",  "z3",  "z4",  "y5",  "p31", "p32", "p41", "p42", "p51",
      "p52", "q41", "q42", "q51", "q52", "kappa1", "kappa2", "kappa3", "kappa4", "kappa5"};
  return names;
}

std::size_t param_index(std::string_view name) {
  const auto& names = param_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw ParseError("unknown parameter '" + std::string(name) + "'");
}

ParameterVector baseline_parameters() {
  ParameterVector Y;
  const std::array<long, kParams> v{0, 0, 1, 4, 2, 1, 0, 1, 1, 0, 1, -19, 0, -63, -82, 2, 3, 4, 3, 2};
  for (std::size_t i = 0; i < kParams; ++i) Y[i] = Rational(v[i]);
  return Y;
}

RatMatrix to_matrix(const Mat42<Rational>& m) {
  RatMatrix out(4, 2);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t r = 0; r < 4; ++r) out(r, c) = m[c * 4 + r];
  return out;
}

Mat42<Rational> from_matrix(const RatMatrix& m) {
  if (m.rows() != 4 || m.cols() != 2) throw ShapeError("expected a 4x2 matrix");
  Mat42<Rational> out;
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t r = 0; r < 4; ++r) out[c * 4 + r] = m(r, c);
  return out;
}

DependentVectors dependent_vectors(const ParameterVector& Y) {
  const auto d = derive_dependent(Y);
  return {d.p1, d.p2, d.q1, d.q2, d.q3};
}

std::array<RatMatrix, kPoints> build_rank_one(const ParameterVector& Y) {
  const auto c = rank_one_matrices(Y);
  std::array<RatMatrix, kPoints> out;
  for (std::size_t j = 0; j < kPoints; ++j) out[j] = to_matrix(c[j]);
  return out;
}

std::array<RatMatrix, kPoints> assemble_X(long nu, const ParameterVector& Y, const RatMatrix& Q) {
  const auto c = rank_one_matrices(Y);
  std::array<RatMatrix, kPoints> out;
  for (long j = 1; j <= 5; ++j) out[j - 1] = Q + to_matrix(z_point(nu, j, Y, c));
  return out;
}

std::array<RatMatrix, kPoints> vertices(long nu, const ParameterVector& Y, const RatMatrix& Q) {
  const auto c = rank_one_matrices(Y);
  std::array<RatMatrix, kPoints> out;
  for (long i = 1; i <= 5; ++i) out[i - 1] = Q + to_matrix(vertex_offset(nu, i, c));
  return out;
}

RatMatrix base_vertex(long nu, const ParameterVector& Y) {
  return vertices(1, Y, RatMatrix::zero(4, 2))[wrap(nu)];
}

RatMatrix upper_block(const RatMatrix& x) { return x.block(0, 0, 2, 2); }
RatMatrix lower_block(const RatMatrix& x) { return x.block(2, 0, 2, 2); }

RatMatrix rotation_j() { return RatMatrix{{0, -1}, {1, 0}}; }

RatMatrix special_lift(const SpecialPoint& p) {
  RatMatrix x(4, 2);
  x.set_block(0, 0, p.A);
  x.set_block(2, 0, p.B * rotation_j());
  return x;
}

SpecialPoint special_project(const RatMatrix& x) {
  if (x.rows() != 4 || x.cols() != 2) throw ShapeError("special_project: expected a 4x2 matrix");
  // J^{-1} = -J.
  return {upper_block(x), lower_block(x) * (-rotation_j())};
}

TauConfiguration TauConfiguration::from_parameters(const ParameterVector& Y, const RatMatrix& Q) {
  const auto dep = derive_dependent(Y);
  TauConfiguration t;
  t.base = Q;
  t.alphas = Y.alphas();
  t.pvecs = {dep.p1, dep.p2, Y.p(3), Y.p(4), Y.p(5)};
  t.qvecs = {dep.q1, dep.q2, dep.q3, Y.q(4), Y.q(5)};
  for (std::size_t j = 0; j < kPoints; ++j) t.kappa[j] = Y.kappa(static_cast<long>(j) + 1);
  return t;
}

std::array<RatMatrix, kPoints> TauConfiguration::rank_one() const {
  std::array<RatMatrix, kPoints> out;
  for (std::size_t j = 0; j < kPoints; ++j) {
    const Rational s = alphas[j][0] * delta[0] + alphas[j][1] * delta[1];
    const std::array<Rational, 4> gamma{pvecs[j][0], pvecs[j][1], s * qvecs[j][0], s * qvecs[j][1]};
    out[j] = RatMatrix::outer(gamma, alphas[j]);
  }
  return out;
}

std::array<RatMatrix, kPoints> TauConfiguration::vertex_points() const {
  const auto c = rank_one();
  std::array<RatMatrix, kPoints> p;
  p[0] = base;
  for (std::size_t j = 1; j < kPoints; ++j) p[j] = p[j - 1] + c[j - 1];
  return p;
}

std::array<RatMatrix, kPoints> TauConfiguration::points() const {
  const auto c = rank_one();
  const auto p = vertex_points();
  std::array<RatMatrix, kPoints> x;
  for (std::size_t j = 0; j < kPoints; ++j) x[j] = p[j] + kappa[j] * c[j];
  return x;
}

ValidityReport validate(const TauConfiguration& config, bool allow_kappa_le_one) {
  ValidityReport rep;
  const auto& al = config.alphas;

  RatMatrix sum_p = RatMatrix::zero(2, 2);
  for (std::size_t j = 0; j < kPoints; ++j) sum_p += RatMatrix::outer(config.pvecs[j], al[j]);
  rep.closure_p = sum_p.is_zero();
  if (!rep.closure_p) rep.failures.push_back("closure: sum p_j (x) alpha_j = " + [&] {
    std::ostringstream os;
    os << sum_p;
    return os.str();
  }());

  // sum_j q_j (x) alpha_j (x) alpha_j as q-index k, alpha indices (a, b).
  bool q_ok = true;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) {
        Rational s;
        for (std::size_t j = 0; j < kPoints; ++j) s += config.qvecs[j][k] * al[j][a] * al[j][b];
        if (!s.is_zero()) q_ok = false;
      }
  rep.closure_q = q_ok;
  if (!q_ok) rep.failures.push_back("closure: sum q_j (x) alpha_j (x) alpha_j != 0");

  rep.alphas_nonzero = true;
  for (std::size_t j = 0; j < kPoints; ++j)
    if (al[j][0].is_zero() && al[j][1].is_zero()) {
      rep.alphas_nonzero = false;
      rep.failures.push_back("alpha_" + std::to_string(j + 1) + " is zero");
    }

  rep.rank_one = true;
  const auto c = config.rank_one();
  for (std::size_t j = 0; j < kPoints; ++j)
    if (rank(c[j]) != 1) {
      rep.rank_one = false;
      rep.failures.push_back("C_" + std::to_string(j + 1) + " does not have rank one");
    }

  auto cross = [&](std::size_t i, std::size_t j) { return al[i][0] * al[j][1] - al[i][1] * al[j][0]; };
  for (std::size_t i = 0; i < kPoints && !rep.noncollinear; ++i)
    for (std::size_t j = i + 1; j < kPoints && !rep.noncollinear; ++j)
      for (std::size_t k = j + 1; k < kPoints && !rep.noncollinear; ++k)
        if (!cross(i, j).is_zero() && !cross(i, k).is_zero() && !cross(j, k).is_zero()) rep.noncollinear = true;
  if (!rep.noncollinear) rep.failures.push_back("no mutually non-collinear triple of alphas");

  rep.kappa_checked = !allow_kappa_le_one;
  rep.kappa_gt_one = true;
  for (std::size_t j = 0; j < kPoints; ++j)
    if (config.kappa[j] <= Rational(1)) {
      rep.kappa_gt_one = false;
      if (rep.kappa_checked) rep.failures.push_back("kappa_" + std::to_string(j + 1) + " <= 1");
    }
  return rep;
}

}  // namespace t5
