#pragma once

// First-order jets of the map Psi^nu(Y, Q) = (Phi(X_1^nu), ..., Phi(X_5^nu)):
// DPhi = H P + E, S_j = dZ_j^nu/dY by forward-mode dual numbers, and the
// stacked 20x20 / 20x8 Jacobians whose determinant at (Y0, P_nu^0) is j_nu.

#include <array>

#include "t5/configuration.hpp"
#include "t5/rat_matrix.hpp"

namespace t5 {

/// Five symmetric 4x4 Hessians, indexed by base point (0-based).
using HessianSet = std::array<RatMatrix, kPoints>;

/// For each j (0-based) the 0-based index of the Hessian used at X_j.
using HessianAssignment = std::array<std::size_t, kPoints>;

/// j -> nu + j - 1 (mod 5), the assignment at (Y0, P_nu^0).
HessianAssignment canonical_assignment(long nu);

/// A = P vec(X), vec(B J) = E vec(X) in the column-major identification.
RatMatrix selector_p();
RatMatrix selector_e();

/// H P + E. Throws ShapeError unless H is a symmetric 4x4 matrix.
RatMatrix dphi(const RatMatrix& h);

/// Jacobians dZ_j^nu/dY (8x20 each, rows in vec order) for j = 1..5, over any field.
template <class T>
std::array<std::array<std::array<T, kParams>, 8>, kPoints> z_jacobians(long nu, const Params<T>& Y) {
  using D = Dual<T, kParams>;
  const Params<D> dy = seed_duals(Y);
  const auto c = rank_one_matrices(dy);
  std::array<std::array<std::array<T, kParams>, 8>, kPoints> out;
  for (long j = 1; j <= 5; ++j) {
    const Mat42<D> z = z_point(nu, j, dy, c);
    for (std::size_t r = 0; r < 8; ++r) out[j - 1][r] = z[r].d;
  }
  return out;
}

/// dZ_j^nu/dY as an exact 8x20 matrix. Throws DegenerateParameters.
RatMatrix dz_dy(long nu, long j, const ParameterVector& Y);

struct JetAssembly {
  long nu = 1;
  std::array<RatMatrix, kPoints> S;  // 8 x 20
  std::array<RatMatrix, kPoints> R;  // 4 x 8
  RatMatrix dPsi_dY;                 // 20 x 20, block rows R_j S_j
  RatMatrix dPsi_dQ;                 // 20 x 8, block rows R_j
};

JetAssembly assemble(long nu, const ParameterVector& Y, const HessianSet& h, const HessianAssignment& assignment);

/// det dPsi^nu/dY at (Y0, P_nu^0) with the canonical assignment.
Rational j_nu(long nu, const HessianSet& h);

/// kind 1: diag(sI, I); kind 2: diag(I, sI).
RatMatrix test_tensor(int kind, const Rational& s);

/// (h1(s), h2(t), h1(s), h1(s), h2(t)).
HessianSet test_tensor_set(const Rational& s, const Rational& t);

/// How a five-tensor tuple is attached to the points of branch nu.
/// BasePoint: the k-th tensor is the Hessian at base point k (canonical assignment).
/// PointOrder: the j-th tensor is used at X_j^nu, i.e. j_nu at the cyclically
/// shifted tuple.
enum class TensorOrder { BasePoint, PointOrder };

HessianAssignment assignment_for(long nu, TensorOrder order);

/// det dPsi^nu/dY at (Y0, P_nu^0) for the test-tensor tuple at (s, t).
Rational g_nu(long nu, const Rational& s, const Rational& t, TensorOrder order);

/// The (s, t) point at which g_nu is evaluated, nu = 1..5.
std::pair<Rational, Rational> nonzero_jacobian_point(long nu);

}  // namespace t5
