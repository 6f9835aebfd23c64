#pragma once

// Special T5-configurations in M^{4x2}: the 20 free parameters, the closed-form
// dependent vectors, rank-one matrices C_j, points X_j^nu and vertices P_j^nu.
//
// The arithmetic is written once over a generic field T so the same formulas
// serve exact certificates (Rational), forward-mode derivatives (Dual) and the
// floating-point Newton solver (double).

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "t5/dual.hpp"
#include "t5/errors.hpp"
#include "t5/rat_matrix.hpp"
#include "t5/rational.hpp"

namespace t5 {

inline constexpr std::size_t kPoints = 5;
inline constexpr std::size_t kParams = 20;

template <class T>
using Vec2 = std::array<T, 2>;

/// A 4x2 matrix stored column-major, i.e. already in the R^8 identification
/// (x11, x21, x31, x41, x12, x22, x32, x42).
template <class T>
using Mat42 = std::array<T, 8>;

/// Coordinates of the parameter vector Y in R^20.
enum ParamIndex : std::size_t {
  kZ1 = 0, kY2, kZ3, kZ4, kY5,
  kP31, kP32, kP41, kP42, kP51, kP52,
  kQ41, kQ42, kQ51, kQ52,
  kKappa1, kKappa2, kKappa3, kKappa4, kKappa5,
};

const std::array<std::string_view, kParams>& param_names();
/// Index of a parameter name ("z1", "p32", "kappa4", ...); throws ParseError.
std::size_t param_index(std::string_view name);

/// 1-based cyclic index to 0-based storage index.
constexpr std::size_t wrap(long k) { return static_cast<std::size_t>(((k - 1) % 5 + 5) % 5); }

template <class T>
struct Params {
  std::array<T, kParams> y{};

  const T& operator[](std::size_t i) const { return y[i]; }
  T& operator[](std::size_t i) { return y[i]; }

  Vec2<T> p(std::size_t j) const { return {y[kP31 + 2 * (j - 3)], y[kP32 + 2 * (j - 3)]}; }  // j in 3..5
  Vec2<T> q(std::size_t j) const { return {y[kQ41 + 2 * (j - 4)], y[kQ42 + 2 * (j - 4)]}; }  // j in 4..5
  const T& kappa(long j) const { return y[kKappa1 + wrap(j)]; }

  /// Direction vectors alpha_1..alpha_5 (0-based array).
  std::array<Vec2<T>, kPoints> alphas() const {
    return {{{T(-1), y[kZ1]}, {y[kY2], T(-1)}, {T(1), y[kZ3]}, {T(1), y[kZ4]}, {y[kY5], T(1)}}};
  }
};

using ParameterVector = Params<Rational>;

/// The baseline configuration: alphas (-1,0),(0,-1),(1,1),(1,4),(2,1),
/// p3..p5 = (1,0),(1,1),(0,1), q4 = (-19,0), q5 = (-63,-82), kappa = (2,3,4,3,2).
ParameterVector baseline_parameters();

template <class T>
struct Dependent {
  Vec2<T> p1, p2, q1, q2, q3;
};

/// Solves the closure identities sum p_j (x) alpha_j = 0 and
/// sum q_j (x) alpha_j (x) alpha_j = 0 for p1, p2, q1, q2, q3.
template <class T>
Dependent<T> derive_dependent(const Params<T>& Y) {
  const T& z1 = Y[kZ1];
  const T& y2 = Y[kY2];
  const T& z3 = Y[kZ3];
  const T& z4 = Y[kZ4];
  const T& y5 = Y[kY5];
  const T one(1);
  const T d12 = one - y2 * z1;
  const T d13 = z1 + z3;
  const T d23 = y2 * z3 + one;
  if (is_zero(d12)) throw DegenerateParameters("degenerate parameters: 1 - y2*z1 = 0");
  if (is_zero(d13)) throw DegenerateParameters("degenerate parameters: z1 + z3 = 0");
  if (is_zero(d23)) throw DegenerateParameters("degenerate parameters: y2*z3 + 1 = 0");

  const Vec2<T> p3 = Y.p(3), p4 = Y.p(4), p5 = Y.p(5);
  const Vec2<T> q4 = Y.q(4), q5 = Y.q(5);
  const T m12 = y2 * z1 - one;  // = -d12

  const T a3 = (y2 * z3 + one) / d12, a4 = (y2 * z4 + one) / d12, a5 = (y2 + y5) / d12;
  const T b3 = (z1 + z3) / d12, b4 = (z1 + z4) / d12, b5 = (y5 * z1 + one) / d12;
  const T q1a = (y2 * z4 + one) * (z3 - z4) / (d13 * m12);
  const T q1b = (y2 + y5) * (y5 * z3 - one) / (d13 * m12);
  const T q2a = -((z1 + z4) * (z3 - z4) / (m12 * d23));
  const T q2b = -((y5 * z1 + one) * (y5 * z3 - one) / (m12 * d23));
  const T q3a = -((z1 + z4) * (y2 * z4 + one) / (d13 * d23));
  const T q3b = -((y2 + y5) * (y5 * z1 + one) / (d13 * d23));

  Dependent<T> out;
  for (std::size_t k = 0; k < 2; ++k) {
    out.p1[k] = a3 * p3[k] + a4 * p4[k] + a5 * p5[k];
    out.p2[k] = b3 * p3[k] + b4 * p4[k] + b5 * p5[k];
    out.q1[k] = q1a * q4[k] + q1b * q5[k];
    out.q2[k] = q2a * q4[k] + q2b * q5[k];
    out.q3[k] = q3a * q4[k] + q3b * q5[k];
  }
  return out;
}

/// C_j = (p_j ; (alpha_j . delta) q_j) (x) alpha_j with delta = (1,1).
template <class T>
Mat42<T> rank_one_from(const Vec2<T>& p, const Vec2<T>& q, const Vec2<T>& alpha) {
  const T s = alpha[0] + alpha[1];
  const std::array<T, 4> gamma{p[0], p[1], s * q[0], s * q[1]};
  Mat42<T> c;
  for (std::size_t col = 0; col < 2; ++col)
    for (std::size_t r = 0; r < 4; ++r) c[col * 4 + r] = gamma[r] * alpha[col];
  return c;
}

/// C_1..C_5 as a 0-based array.
template <class T>
std::array<Mat42<T>, kPoints> rank_one_matrices(const Params<T>& Y) {
  const Dependent<T> dep = derive_dependent(Y);
  const auto al = Y.alphas();
  const std::array<Vec2<T>, kPoints> ps{dep.p1, dep.p2, Y.p(3), Y.p(4), Y.p(5)};
  const std::array<Vec2<T>, kPoints> qs{dep.q1, dep.q2, dep.q3, Y.q(4), Y.q(5)};
  std::array<Mat42<T>, kPoints> c;
  for (std::size_t j = 0; j < kPoints; ++j) c[j] = rank_one_from(ps[j], qs[j], al[j]);
  return c;
}

template <class T>
void add_into(Mat42<T>& acc, const Mat42<T>& x, const T& scale = T(1)) {
  for (std::size_t k = 0; k < 8; ++k) acc[k] += scale * x[k];
}

/// Z_j^nu = C_nu + ... + C_{nu+j-2} + kappa_{nu+j-1} C_{nu+j-1}, indices 1-based mod 5.
template <class T>
Mat42<T> z_point(long nu, long j, const Params<T>& Y, const std::array<Mat42<T>, kPoints>& c) {
  Mat42<T> z{};
  for (long k = 0; k + 1 < j; ++k) add_into(z, c[wrap(nu + k)]);
  add_into(z, c[wrap(nu + j - 1)], Y.kappa(nu + j - 1));
  return z;
}

/// P_i^nu - Q = C_nu + ... + C_{nu+i-2}.
template <class T>
Mat42<T> vertex_offset(long nu, long i, const std::array<Mat42<T>, kPoints>& c) {
  Mat42<T> p{};
  for (long k = 0; k + 1 < i; ++k) add_into(p, c[wrap(nu + k)]);
  return p;
}

/// Promotes each coordinate of Y to an independent dual variable.
template <class T>
Params<Dual<T, kParams>> seed_duals(const Params<T>& Y) {
  Params<Dual<T, kParams>> out;
  for (std::size_t i = 0; i < kParams; ++i) out[i] = Dual<T, kParams>::variable(Y[i], i);
  return out;
}

// ---- exact (RatMatrix) interface --------------------------------------------

RatMatrix to_matrix(const Mat42<Rational>& m);
Mat42<Rational> from_matrix(const RatMatrix& m);

struct DependentVectors {
  Vec2<Rational> p1, p2, q1, q2, q3;
};

DependentVectors dependent_vectors(const ParameterVector& Y);
/// C_1..C_5 as 4x2 matrices.
std::array<RatMatrix, kPoints> build_rank_one(const ParameterVector& Y);
/// X_1^nu..X_5^nu, nu 1-based.
std::array<RatMatrix, kPoints> assemble_X(long nu, const ParameterVector& Y, const RatMatrix& Q);
/// P_1^nu..P_5^nu, nu 1-based.
std::array<RatMatrix, kPoints> vertices(long nu, const ParameterVector& Y, const RatMatrix& Q);
/// P_nu^0 for the base configuration anchored at P_1 = 0.
RatMatrix base_vertex(long nu, const ParameterVector& Y);

/// Upper 2x2 block A and lower 2x2 block of a 4x2 matrix.
RatMatrix upper_block(const RatMatrix& x);
RatMatrix lower_block(const RatMatrix& x);

/// J = [[0,-1],[1,0]].
RatMatrix rotation_j();

struct SpecialPoint {
  RatMatrix A;  // 2x2
  RatMatrix B;  // 2x2
};

/// L([A, B]) = [A ; B J].
RatMatrix special_lift(const SpecialPoint& p);
/// Inverse of special_lift: B = (lower block) J^{-1}.
SpecialPoint special_project(const RatMatrix& x);

/// A fully materialized configuration; fields may be edited to probe validate().
struct TauConfiguration {
  RatMatrix base = RatMatrix::zero(4, 2);
  std::array<Vec2<Rational>, kPoints> alphas{};
  std::array<Vec2<Rational>, kPoints> pvecs{};
  std::array<Vec2<Rational>, kPoints> qvecs{};
  std::array<Rational, kPoints> kappa{};
  Vec2<Rational> delta{Rational(1), Rational(1)};

  static TauConfiguration from_parameters(const ParameterVector& Y, const RatMatrix& Q = RatMatrix::zero(4, 2));

  std::array<RatMatrix, kPoints> rank_one() const;
  /// X_j = P_j + kappa_j C_j.
  std::array<RatMatrix, kPoints> points() const;
  /// P_1 = base, P_{j+1} = P_j + C_j.
  std::array<RatMatrix, kPoints> vertex_points() const;
};

struct ValidityReport {
  bool closure_p = false;       // sum p_j (x) alpha_j = 0
  bool closure_q = false;       // sum q_j (x) alpha_j (x) alpha_j = 0
  bool rank_one = false;        // every C_j has rank exactly 1
  bool alphas_nonzero = false;
  bool noncollinear = false;    // some mutually non-collinear triple of alphas
  bool kappa_gt_one = false;
  bool kappa_checked = true;
  std::vector<std::string> failures;

  bool ok() const {
    return closure_p && closure_q && rank_one && alphas_nonzero && noncollinear && (kappa_gt_one || !kappa_checked);
  }
};

ValidityReport validate(const TauConfiguration& config, bool allow_kappa_le_one = false);

}  // namespace t5
