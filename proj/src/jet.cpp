#include "t5/jet.hpp"

namespace t5 {

HessianAssignment canonical_assignment(long nu) {
  HessianAssignment a;
  for (long j = 1; j <= 5; ++j) a[j - 1] = wrap(nu + j - 1);
  return a;
}

RatMatrix selector_p() {
  RatMatrix p(4, 8);
  p(0, 0) = p(1, 1) = p(2, 4) = p(3, 5) = 1;
  return p;
}

RatMatrix selector_e() {
  RatMatrix e(4, 8);
  e(0, 6) = e(1, 7) = 1;
  e(2, 2) = e(3, 3) = -1;
  return e;
}

RatMatrix dphi(const RatMatrix& h) {
  if (h.rows() != 4 || h.cols() != 4) throw ShapeError("dphi: Hessian must be 4x4");
  if (!h.is_symmetric()) throw ShapeError("dphi: Hessian must be symmetric");
  return h * selector_p() + selector_e();
}

RatMatrix dz_dy(long nu, long j, const ParameterVector& Y) {
  if (j < 1 || j > 5) throw ShapeError("dz_dy: j must be in 1..5");
  const auto jac = z_jacobians(nu, Y);
  RatMatrix s(8, kParams);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t k = 0; k < kParams; ++k) s(r, k) = jac[j - 1][r][k];
  return s;
}

JetAssembly assemble(long nu, const ParameterVector& Y, const HessianSet& h, const HessianAssignment& assignment) {
  const auto jac = z_jacobians(nu, Y);
  JetAssembly a;
  a.nu = nu;
  a.dPsi_dY = RatMatrix(20, kParams);
  a.dPsi_dQ = RatMatrix(20, 8);
  for (std::size_t j = 0; j < kPoints; ++j) {
    if (assignment[j] >= kPoints) throw ShapeError("assemble: Hessian assignment out of range");
    a.S[j] = RatMatrix(8, kParams);
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t k = 0; k < kParams; ++k) a.S[j](r, k) = jac[j][r][k];
    a.R[j] = dphi(h[assignment[j]]);
    a.dPsi_dY.set_block(4 * j, 0, a.R[j] * a.S[j]);
    a.dPsi_dQ.set_block(4 * j, 0, a.R[j]);
  }
  return a;
}

Rational j_nu(long nu, const HessianSet& h) {
  return determinant(assemble(nu, baseline_parameters(), h, canonical_assignment(nu)).dPsi_dY);
}

RatMatrix test_tensor(int kind, const Rational& s) {
  if (kind != 1 && kind != 2) throw ShapeError("test_tensor: kind must be 1 or 2");
  RatMatrix t = RatMatrix::identity(4);
  const std::size_t first = kind == 1 ? 0 : 2;
  t(first, first) = t(first + 1, first + 1) = s;
  return t;
}

HessianSet test_tensor_set(const Rational& s, const Rational& t) {
  const RatMatrix a = test_tensor(1, s), b = test_tensor(2, t);
  return {a, b, a, a, b};
}

HessianAssignment assignment_for(long nu, TensorOrder order) {
  if (order == TensorOrder::BasePoint) return canonical_assignment(nu);
  return {0, 1, 2, 3, 4};
}

Rational g_nu(long nu, const Rational& s, const Rational& t, TensorOrder order) {
  return determinant(
      assemble(nu, baseline_parameters(), test_tensor_set(s, t), assignment_for(nu, order)).dPsi_dY);
}

std::pair<Rational, Rational> nonzero_jacobian_point(long nu) {
  switch (wrap(nu)) {
    case 0: return {1, 0};
    case 2: return {0, 1};
    default: return {0, 0};
  }
}

}  // namespace t5
