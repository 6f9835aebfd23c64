#include "t5/implicit.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "t5/support.hpp"

namespace t5 {

namespace {

Params<double> params_of(const Vec20& y) {
  Params<double> p;
  for (std::size_t i = 0; i < kParams; ++i) p[i] = y(static_cast<Eigen::Index>(i));
  return p;
}

Vec8 to_vec8(const Mat42<double>& m) {
  Vec8 v;
  for (int k = 0; k < 8; ++k) v(k) = m[k];
  return v;
}

Vec4 upper(const Vec8& x) { return Vec4(x(0), x(1), x(4), x(5)); }

// vec(B J) for the raw lower block B of X.
Vec4 lower_rot(const Vec8& x) { return Vec4(x(6), x(7), -x(2), -x(3)); }

Vec4 vec2x2(const RatMatrix& a) { return Vec4(a(0, 0).to_double(), a(1, 0).to_double(), a(0, 1).to_double(), a(1, 1).to_double()); }

Mat4 to_mat4(const RatMatrix& h) {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = h(i, j).to_double();
  return m;
}

Eigen::Matrix<double, 4, 8> selector_p_float() {
  Eigen::Matrix<double, 4, 8> p = Eigen::Matrix<double, 4, 8>::Zero();
  p(0, 0) = p(1, 1) = p(2, 4) = p(3, 5) = 1;
  return p;
}

Eigen::Matrix<double, 4, 8> selector_e_float() {
  Eigen::Matrix<double, 4, 8> e = Eigen::Matrix<double, 4, 8>::Zero();
  e(0, 6) = e(1, 7) = 1;
  e(2, 2) = e(3, 3) = -1;
  return e;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

LocalModel LocalModel::from_points(const std::array<RatMatrix, kPoints>& points, const HessianSet& h) {
  LocalModel m;
  const RatMatrix J = rotation_j();
  for (std::size_t j = 0; j < kPoints; ++j) {
    if (!h[j].is_symmetric() || h[j].rows() != 4) throw ShapeError("LocalModel: Hessians must be symmetric 4x4");
    m.anchor[j] = vec2x2(upper_block(points[j]));
    m.gradient[j] = -vec2x2(lower_block(points[j]) * J);
    m.hessian[j] = to_mat4(h[j]);
  }
  m.trust_radius = std::sqrt(min_separation(points).to_double()) / 4;
  return m;
}

LocalModel LocalModel::baseline(const HessianSet& h) {
  return from_points(assemble_X(1, baseline_parameters(), RatMatrix::zero(4, 2)), h);
}

std::size_t LocalModel::locate(const Vec4& a) const {
  std::size_t found = kPoints;
  for (std::size_t j = 0; j < kPoints; ++j)
    if ((a - anchor[j]).norm() < trust_radius) {
      if (found != kPoints) throw OutOfTrustRegion("LocalModel: point lies in two trust regions");
      found = j;
    }
  if (found == kPoints) throw OutOfTrustRegion("LocalModel: point outside every trust region");
  return found;
}

Vec4 LocalModel::grad(std::size_t j, const Vec4& a) const {
  const Vec4 d = a - anchor[j];
  Vec4 g = gradient[j] + hessian[j] * d;
  if (cubic[j]) {
    const Cubic& t = *cubic[j];
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q)
        for (int r = 0; r < 4; ++r) g(p) += 0.5 * t[p * 16 + q * 4 + r] * d(q) * d(r);
  }
  return g;
}

Mat4 LocalModel::hess(std::size_t j, const Vec4& a) const {
  Mat4 h = hessian[j];
  if (cubic[j]) {
    const Vec4 d = a - anchor[j];
    const Cubic& t = *cubic[j];
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q)
        for (int r = 0; r < 4; ++r) h(p, q) += t[p * 16 + q * 4 + r] * d(r);
  }
  return h;
}

Vec20 to_float(const ParameterVector& y) {
  Vec20 v;
  for (std::size_t i = 0; i < kParams; ++i) v(static_cast<Eigen::Index>(i)) = y[i].to_double();
  return v;
}

Vec8 to_float_vec(const RatMatrix& x) {
  Vec8 v;
  for (int c = 0; c < 2; ++c)
    for (int r = 0; r < 4; ++r) v(c * 4 + r) = x(r, c).to_double();
  return v;
}

Vec20 baseline_y() { return to_float(baseline_parameters()); }

Vec8 base_vertex_vec(long nu) { return to_float_vec(base_vertex(nu, baseline_parameters())); }

std::array<Vec8, kPoints> points_float(long nu, const Vec20& y, const Vec8& q) {
  const Params<double> p = params_of(y);
  const auto c = rank_one_matrices(p);
  std::array<Vec8, kPoints> out;
  for (long j = 1; j <= 5; ++j) out[j - 1] = q + to_vec8(z_point(nu, j, p, c));
  return out;
}

std::array<Vec8, kPoints> vertices_float(long nu, const Vec20& y, const Vec8& q) {
  const auto c = rank_one_matrices(params_of(y));
  std::array<Vec8, kPoints> out;
  for (long i = 1; i <= 5; ++i) out[i - 1] = q + to_vec8(vertex_offset(nu, i, c));
  return out;
}

Vec20 psi(long nu, const Vec20& y, const Vec8& q, const LocalModel& model) {
  const auto x = points_float(nu, y, q);
  Vec20 r;
  for (int j = 0; j < 5; ++j) {
    const Vec4 a = upper(x[j]);
    r.segment<4>(4 * j) = model.grad(model.locate(a), a) + lower_rot(x[j]);
  }
  return r;
}

PsiJacobian psi_jacobian(long nu, const Vec20& y, const Vec8& q, const LocalModel& model) {
  const auto x = points_float(nu, y, q);
  const auto jac = z_jacobians(nu, params_of(y));
  static const Eigen::Matrix<double, 4, 8> P = selector_p_float(), E = selector_e_float();
  PsiJacobian out;
  for (int j = 0; j < 5; ++j) {
    const Vec4 a = upper(x[j]);
    const Eigen::Matrix<double, 4, 8> R = model.hess(model.locate(a), a) * P + E;
    Mat8x20 S;
    for (int r = 0; r < 8; ++r)
      for (int k = 0; k < 20; ++k) S(r, k) = jac[j][r][k];
    out.dY.block<4, 20>(4 * j, 0) = R * S;
    out.dQ.block<4, 8>(4 * j, 0) = R;
    if (j == 0) out.S1 = S;
  }
  return out;
}

NewtonResult newton_solve(long nu, const Vec8& q, const LocalModel& model, const Vec20& y_init,
                          const NewtonOptions& opt) {
  NewtonResult res;
  res.Y = y_init;
  for (;;) {
    const Vec20 r = psi(nu, res.Y, q, model);
    res.residual = r.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(res.residual)) throw MaxIterExceeded("newton_solve: residual is not finite");
    if (res.residual < opt.tol) {
      res.converged = true;
      return res;
    }
    if (res.iterations >= opt.max_iter)
      throw MaxIterExceeded("newton_solve: residual " + std::to_string(res.residual) + " after " +
                            std::to_string(res.iterations) + " iterations");
    const Eigen::FullPivLU<Mat20> lu(psi_jacobian(nu, res.Y, q, model).dY);
    if (!lu.isInvertible()) throw SingularJacobian("newton_solve: dPsi/dY is numerically singular");
    const Vec20 step = lu.solve(r);
    // Halve the step while the trial point leaves the trust regions or the residual grows.
    double t = 1;
    for (int halving = 0;; ++halving) {
      const Vec20 trial = res.Y - t * step;
      try {
        if (psi(nu, trial, q, model).lpNorm<Eigen::Infinity>() < res.residual || halving == 30) {
          res.Y = trial;
          break;
        }
      } catch (const OutOfTrustRegion&) {
        if (halving == 30) throw;
      }
      t /= 2;
    }
    ++res.iterations;
  }
}

Mat8 dz_analytic(long nu, const Vec20& y, const Vec8& q, const LocalModel& model) {
  const PsiJacobian j = psi_jacobian(nu, y, q, model);
  const Eigen::FullPivLU<Mat20> lu(j.dY);
  if (!lu.isInvertible()) throw SingularJacobian("dz_analytic: dPsi/dY is numerically singular");
  return -j.S1 * lu.solve(j.dQ);
}

Mat8 dz_finite_difference(long nu, const Vec8& q, const LocalModel& model, const Vec20& y_init, double step,
                          const NewtonOptions& opt) {
  const auto z_of = [&](const Vec8& qq) {
    const NewtonResult r = newton_solve(nu, qq, model, y_init, opt);
    return Vec8(points_float(nu, r.Y, qq)[0] - qq);
  };
  Mat8 d;
  for (int k = 0; k < 8; ++k) {
    Vec8 e = Vec8::Zero();
    e(k) = step;
    d.col(k) = (z_of(q + e) - z_of(q - e)) / (2 * step);
  }
  return d;
}

double CycleReport::max_residual() const {
  double m = 0;
  for (std::size_t i = 0; i < kPoints; ++i) m = std::max({m, y_residual[i], q_residual[i]});
  return m;
}

double CycleReport::min_abs_det() const {
  double m = std::numeric_limits<double>::infinity();
  for (double d : det) m = std::min(m, std::abs(d));
  return m;
}

CycleReport verify_cycle(const Vec8& q, const LocalModel& model, const NewtonOptions& opt, double fd_step) {
  CycleReport rep;
  const Vec20 y0 = baseline_y();
  const NewtonResult r1 = newton_solve(1, q, model, y0, opt);
  const auto phat = vertices_float(1, r1.Y, q);
  for (long i = 1; i <= 5; ++i) {
    const NewtonResult ri = newton_solve(i, phat[i - 1], model, y0, opt);
    rep.y_residual[i - 1] = (ri.Y - r1.Y).lpNorm<Eigen::Infinity>();
    const Vec8 back = vertices_float(i, ri.Y, phat[i - 1])[wrap(7 - i)];
    rep.q_residual[i - 1] = (back - q).lpNorm<Eigen::Infinity>();
  }

  // d P^1_i / dQ by central differences through Y_1.
  const NewtonOptions tight{std::min(opt.tol, 1e-12), opt.max_iter};
  std::array<Mat8, kPoints> jac;
  for (int k = 0; k < 8; ++k) {
    Vec8 e = Vec8::Zero();
    e(k) = fd_step;
    const Vec8 qp = q + e, qm = q - e;
    const auto vp = vertices_float(1, newton_solve(1, qp, model, r1.Y, tight).Y, qp);
    const auto vm = vertices_float(1, newton_solve(1, qm, model, r1.Y, tight).Y, qm);
    for (std::size_t i = 0; i < kPoints; ++i) jac[i].col(k) = (vp[i] - vm[i]) / (2 * fd_step);
  }
  for (std::size_t i = 0; i < kPoints; ++i) rep.det[i] = jac[i].determinant();
  return rep;
}

bool SigmaReport::all_nonzero() const {
  for (double m : det_margin)
    if (!(m > 0)) return false;
  return true;
}

SigmaReport sample_sigma(double lambda, const std::vector<Vec8>& qs, const LocalModel& model, bool check_det,
                         const NewtonOptions& opt) {
  if (!(lambda > 0 && lambda <= 1)) throw Error("sample_sigma: lambda must lie in (0, 1]");
  SigmaReport rep;
  const Vec20 y0 = baseline_y();
  for (std::size_t s = 0; s < qs.size(); ++s) {
    const NewtonResult r1 = newton_solve(1, qs[s], model, y0, opt);
    const auto x = points_float(1, r1.Y, qs[s]);
    const auto p = vertices_float(1, r1.Y, qs[s]);
    for (int i = 0; i < 5; ++i) rep.points.push_back({s, i + 1, lambda * x[i] + (1 - lambda) * p[i]});
    if (!check_det) continue;
    double margin = std::numeric_limits<double>::infinity();
    for (long nu = 1; nu <= 5; ++nu) {
      const Vec8& u = p[nu - 1];
      const NewtonResult rn = newton_solve(nu, u, model, r1.Y, opt);
      const Mat8 m = dz_analytic(nu, rn.Y, u, model);
      margin = std::min(margin, std::abs((Mat8::Identity() + lambda * m).determinant()));
    }
    rep.det_margin.push_back(margin);
  }
  return rep;
}

std::vector<Vec8> sample_ball(const Vec8& center, double radius, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec8> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    Vec8 g;
    for (int k = 0; k < 8; k += 2) {
      // Box-Muller; 1 - u keeps the logarithm finite.
      const double u1 = 1.0 - uniform01(rng), u2 = uniform01(rng);
      const double r = std::sqrt(-2.0 * std::log(u1));
      g(k) = r * std::cos(2 * std::numbers::pi * u2);
      g(k + 1) = r * std::sin(2 * std::numbers::pi * u2);
    }
    const double scale = radius * std::pow(uniform01(rng), 1.0 / 8) / g.norm();
    out.push_back(center + scale * g);
  }
  return out;
}

}  // namespace t5
