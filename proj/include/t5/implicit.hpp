#pragma once

// Floating-point continuation of the implicit maps Y_nu(Q) defined by
// Psi^nu(Y, Q) = 0, on an explicit local model of DF around the five anchors.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "t5/configuration.hpp"
#include "t5/jet.hpp"

namespace t5 {

using Vec4 = Eigen::Vector4d;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Vec20 = Eigen::Matrix<double, 20, 1>;
using Mat4 = Eigen::Matrix4d;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat20 = Eigen::Matrix<double, 20, 20>;
using Mat20x8 = Eigen::Matrix<double, 20, 8>;
using Mat8x20 = Eigen::Matrix<double, 8, 20>;

/// Symmetric third-order tensor on R^4, entry (a, b, c) at a*16 + b*4 + c.
using Cubic = std::array<double, 64>;

/// DF near anchor j: g_j + H_j d + T_j(d, d)/2 with d = vec(A - A_j).
struct LocalModel {
  std::array<Vec4, kPoints> anchor;
  std::array<Vec4, kPoints> gradient;  // -B_j J
  std::array<Mat4, kPoints> hessian;
  std::array<std::optional<Cubic>, kPoints> cubic;
  double trust_radius = 0;  // Frobenius

  /// Anchors and gradients from X_j = [A_j ; B_j]; trust radius sqrt(min_separation)/4.
  static LocalModel from_points(const std::array<RatMatrix, kPoints>& points, const HessianSet& h);
  /// The base configuration at Y0 with the given Hessians.
  static LocalModel baseline(const HessianSet& h);

  /// Index of the anchor whose trust ball contains a; throws OutOfTrustRegion.
  std::size_t locate(const Vec4& a) const;
  Vec4 grad(std::size_t j, const Vec4& a) const;
  Mat4 hess(std::size_t j, const Vec4& a) const;
};

Vec20 to_float(const ParameterVector& y);
/// Column-major vec of a 4x2 matrix.
Vec8 to_float_vec(const RatMatrix& x);
Vec20 baseline_y();
/// vec(P_nu^0).
Vec8 base_vertex_vec(long nu);

/// Points X_j^nu(Y, Q) and vertices P_j^nu(Y, Q) in vec form.
std::array<Vec8, kPoints> points_float(long nu, const Vec20& y, const Vec8& q);
std::array<Vec8, kPoints> vertices_float(long nu, const Vec20& y, const Vec8& q);

/// (Phi(X_1^nu), ..., Phi(X_5^nu)).
Vec20 psi(long nu, const Vec20& y, const Vec8& q, const LocalModel& model);

struct PsiJacobian {
  Mat20 dY;
  Mat20x8 dQ;
  Mat8x20 S1;  // dZ_1^nu / dY
};
PsiJacobian psi_jacobian(long nu, const Vec20& y, const Vec8& q, const LocalModel& model);

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 50;
};

struct NewtonResult {
  Vec20 Y;
  double residual = 0;  // max-norm of Psi
  int iterations = 0;
  bool converged = false;
};

/// Throws MaxIterExceeded, OutOfTrustRegion, or SingularJacobian.
NewtonResult newton_solve(long nu, const Vec8& q, const LocalModel& model, const Vec20& y_init,
                          const NewtonOptions& opt = {});

/// Dz^nu(Q) = -S_1 (dPsi/dY)^{-1} dPsi/dQ at (Y, Q).
Mat8 dz_analytic(long nu, const Vec20& y, const Vec8& q, const LocalModel& model);
/// Central differences of Q -> Z_1^nu(Y_nu(Q)).
Mat8 dz_finite_difference(long nu, const Vec8& q, const LocalModel& model, const Vec20& y_init, double step = 1e-5,
                          const NewtonOptions& opt = {1e-12, 50});

struct CycleReport {
  std::array<double, kPoints> y_residual{};  // |Y_1(Q) - Y_i(P^1_i(Q))|_inf
  std::array<double, kPoints> q_residual{};  // |P^i_{7-i}(P^1_i(Q)) - Q|_inf
  std::array<double, kPoints> det{};         // finite-difference det dP^1_i/dQ
  double max_residual() const;
  double min_abs_det() const;
};
CycleReport verify_cycle(const Vec8& q, const LocalModel& model, const NewtonOptions& opt = {}, double fd_step = 1e-6);

struct SigmaPoint {
  std::size_t sample = 0;  // index into the Q list
  int i = 1;               // segment index 1..5
  Vec8 point;
};

struct SigmaReport {
  std::vector<SigmaPoint> points;
  /// Per sample: min over nu of |det(I + lambda M_nu(P^1_nu(Q)))|; empty unless checked.
  std::vector<double> det_margin;
  bool all_nonzero() const;
};

/// lambda X^1_i(Q) + (1 - lambda) P^1_i(Q) for every Q and i.
SigmaReport sample_sigma(double lambda, const std::vector<Vec8>& qs, const LocalModel& model, bool check_det,
                         const NewtonOptions& opt = {});

/// Uniform samples in the Euclidean ball; deterministic for a given seed.
std::vector<Vec8> sample_ball(const Vec8& center, double radius, std::size_t count, std::uint64_t seed);

}  // namespace t5
