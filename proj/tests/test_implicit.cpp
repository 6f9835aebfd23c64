#include <Eigen/Eigenvalues>
#include <cmath>

#include "doctest.h"
#include "t5/certificate.hpp"
#include "t5/implicit.hpp"
#include "t5/io.hpp"
#include "test_support.hpp"

using namespace t5;

namespace {

const HessianSet& default_hessians() {
  static const HessianSet h = load_hessians(T5_DATA_DIR "/hessians.txt");
  return h;
}

const LocalModel& model() {
  static const LocalModel m = LocalModel::baseline(default_hessians());
  return m;
}

Mat8 to_float8(const RatMatrix& m) {
  Mat8 out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) out(i, j) = m(i, j).to_double();
  return out;
}

}  // namespace

TEST_CASE("local model interpolates the jets") {
  const LocalModel& m = model();
  const auto x = assemble_X(1, baseline_parameters(), RatMatrix::zero(4, 2));
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(m.locate(m.anchor[j]) == j);
    CHECK((m.grad(j, m.anchor[j]) - m.gradient[j]).norm() == 0.0);
    CHECK((m.hess(j, m.anchor[j]) - m.hessian[j]).norm() == 0.0);
  }
  // A cubic correction leaves the jets at the anchor unchanged.
  LocalModel c = m;
  Cubic t{};
  t[0] = t[21] = 3;  // (0,0,0), (1,1,1)
  c.cubic[2] = t;
  CHECK((c.grad(2, c.anchor[2]) - m.gradient[2]).norm() == 0.0);
  CHECK((c.hess(2, c.anchor[2]) - m.hessian[2]).norm() == 0.0);
  Vec4 a = c.anchor[2];
  a(0) += 0.1;
  CHECK(std::abs(c.grad(2, a)(0) - m.grad(2, a)(0) - 0.5 * 3 * 0.01) < 1e-12);

  Vec4 far = m.anchor[0];
  far(0) += 100;
  CHECK_THROWS_AS(m.locate(far), OutOfTrustRegion);
  CHECK(m.trust_radius == doctest::Approx(std::sqrt(min_separation(x).to_double()) / 4));
}

TEST_CASE("psi vanishes at the base configuration") {
  for (long nu = 1; nu <= 5; ++nu) CHECK(psi(nu, baseline_y(), base_vertex_vec(nu), model()).norm() < 1e-9);
}

TEST_CASE("float Jacobian matches the exact assembly") {
  const ParameterVector Y = baseline_parameters();
  for (long nu = 1; nu <= 5; ++nu) {
    const auto exact = assemble(nu, Y, default_hessians(), canonical_assignment(nu));
    const auto f = psi_jacobian(nu, baseline_y(), base_vertex_vec(nu), model());
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      for (int k = 0; k < 20; ++k) {
        const double e = exact.dPsi_dY(i, k).to_double();
        worst = std::max(worst, std::abs(f.dY(i, k) - e) / std::max(1.0, std::abs(e)));
      }
      for (int k = 0; k < 8; ++k) {
        const double e = exact.dPsi_dQ(i, k).to_double();
        worst = std::max(worst, std::abs(f.dQ(i, k) - e) / std::max(1.0, std::abs(e)));
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("relabeling of psi") {
  const Vec20 y = baseline_y();
  const auto qs = sample_ball(base_vertex_vec(1), 1e-3, 3, 5);
  for (const auto& q : qs) {
    const Vec20 r = psi(1, y, q, model());
    const auto p = vertices_float(1, y, q);
    for (long i = 1; i <= 5; ++i) {
      const Vec20 s = psi(i, y, p[i - 1], model());
      for (long j = i; j <= 5; ++j)
        CHECK((r.segment<4>(4 * (j - 1)) - s.segment<4>(4 * (j - i))).norm() < 1e-9);
    }
  }
}

TEST_CASE("Newton at the base vertices") {
  for (long nu = 1; nu <= 5; ++nu) {
    const auto r = newton_solve(nu, base_vertex_vec(nu), model(), baseline_y());
    CHECK(r.converged);
    CHECK(r.iterations <= 2);
    CHECK(r.residual < 1e-12);
    CHECK((r.Y - baseline_y()).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("Newton in a 1e-3 ball") {
  for (long nu = 1; nu <= 5; ++nu)
    for (const auto& q : sample_ball(base_vertex_vec(nu), 1e-3, 10, 100 + nu)) {
      CHECK((q - base_vertex_vec(nu)).norm() <= 1e-3);
      const auto r = newton_solve(nu, q, model(), baseline_y());
      CHECK(r.converged);
      CHECK(r.residual < 1e-10);
      CHECK(r.iterations <= 50);
    }
}

TEST_CASE("Newton far away fails loudly") {
  Vec8 q = base_vertex_vec(1);
  q(0) += 50;
  q(5) -= 70;
  bool threw = false;
  try {
    (void)newton_solve(1, q, model(), baseline_y());
  } catch (const OutOfTrustRegion&) {
    threw = true;
  } catch (const MaxIterExceeded&) {
    threw = true;
  } catch (const SingularJacobian&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("Dz two ways") {
  for (long nu = 1; nu <= 5; ++nu) {
    const Mat8 exact = to_float8(m_matrix(nu, default_hessians()));
    const Vec8 p = base_vertex_vec(nu);
    const Mat8 fd = dz_finite_difference(nu, p, model(), baseline_y());
    const Mat8 an = dz_analytic(nu, baseline_y(), p, model());
    CHECK((fd - exact).norm() / exact.norm() < 1e-6);
    CHECK((an - exact).norm() / exact.norm() < 1e-10);
  }
}

TEST_CASE("spectrum persists at perturbed Q") {
  for (long nu = 1; nu <= 5; ++nu) {
    const auto s = spectral(m_matrix(nu, default_hessians()));
    const double mu = s.mu.to_double();
    for (const auto& q : sample_ball(base_vertex_vec(nu), 1e-3, 3, 200 + nu)) {
      const auto r = newton_solve(nu, q, model(), baseline_y());
      const Mat8 m = dz_analytic(nu, r.Y, q, model());
      const Eigen::EigenSolver<Mat8> es(m);
      int zero = 0, minus = 0, top = 0;
      for (int k = 0; k < 8; ++k) {
        const auto ev = es.eigenvalues()(k);
        // Use the exact center mu_0 with a loose radius; -1 and 0 are exact.
        if (std::abs(ev) < 1e-6) ++zero;
        else if (std::abs(ev + 1.0) < 1e-6) ++minus;
        else if (std::abs(ev.imag()) < 1e-9 && std::abs(ev.real() - mu) < 1.0) ++top;
      }
      CHECK(zero >= 3);
      CHECK(minus >= 4);
      CHECK(zero + minus + top == 8);
      // mu(Q) = 4 + tr M(Q) remains a simple eigenvalue.
      bool found = false;
      for (int k = 0; k < 8; ++k)
        if (std::abs(es.eigenvalues()(k) - std::complex<double>(4.0 + m.trace(), 0)) < 1e-6) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("cycle identities") {
  const auto at_base = verify_cycle(base_vertex_vec(1), model());
  CHECK(at_base.max_residual() < 1e-10);
  for (const auto& q : sample_ball(base_vertex_vec(1), 1e-3, 5, 7)) {
    const auto rep = verify_cycle(q, model());
    CHECK(rep.max_residual() < 1e-8);
    CHECK(rep.min_abs_det() > 1e-3);
  }
}

TEST_CASE("sigma samples") {
  const Vec8 p1 = base_vertex_vec(1);
  const auto x0 = assemble_X(1, baseline_parameters(), RatMatrix::zero(4, 2));
  const auto at_one = sample_sigma(1.0, {p1}, model(), false);
  REQUIRE(at_one.points.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK((at_one.points[i].point - to_float_vec(x0[i])).norm() < 1e-9);
  // lambda = 1, i = 1 is the lift of (A_1, B_1) with the rotated lower block.
  const auto sp = special_project(x0[0]);
  CHECK((at_one.points[0].point - to_float_vec(special_lift(sp))).norm() < 1e-9);

  const auto tiny = sample_sigma(1e-9, {p1}, model(), false);
  const auto verts = vertices(1, baseline_parameters(), RatMatrix::zero(4, 2));
  for (int i = 0; i < 5; ++i) CHECK((tiny.points[i].point - to_float_vec(verts[i])).norm() < 1e-5);

  CHECK(sample_sigma(0.5, {}, model(), true).points.empty());
  CHECK_THROWS(sample_sigma(0.0, {p1}, model(), false));

  const auto qs = sample_ball(p1, 1e-3, 5, 9);
  for (double lambda : {0.9, 0.99}) {
    const auto rep = sample_sigma(lambda, qs, model(), true);
    CHECK(rep.points.size() == 25);
    CHECK(rep.det_margin.size() == 5);
    CHECK(rep.all_nonzero());
  }
  // det(I + lambda M) = (1 - lambda)^4 (1 + lambda mu) at the center.
  for (long nu = 1; nu <= 5; ++nu) {
    const auto s = spectral(m_matrix(nu, default_hessians()));
    const Mat8 m = to_float8(m_matrix(nu, default_hessians()));
    const double lambda = 0.9;
    const double expect = std::pow(1 - lambda, 4) * (1 + lambda * s.mu.to_double());
    CHECK((Mat8::Identity() + lambda * m).determinant() == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("ball sampling is deterministic and inside the ball") {
  const Vec8 c = base_vertex_vec(2);
  const auto a = sample_ball(c, 0.5, 20, 3), b = sample_ball(c, 0.5, 20, 3);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k] == b[k]);
    CHECK((a[k] - c).norm() <= 0.5);
  }
  CHECK(sample_ball(c, 0.5, 0, 3).empty());
}
