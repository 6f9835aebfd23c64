#pragma once

// Exact checks of the open-set condition at the base configuration: the
// matrices M_nu = Dz^nu(P_nu^0), their spectra {-1, 0, mu}, the adjugate
// vectors adj(I - M/mu) z_0^nu, and the certificate that collects them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "t5/jet.hpp"
#include "t5/support.hpp"

namespace t5 {

/// M = -S_1 (dPsi/dY)^{-1} dPsi/dQ together with the pieces it was built from.
struct BranchJet {
  JetAssembly jet;
  Rational jacobian;  // det dPsi/dY
  RatMatrix inverse;  // [T_1 ... T_5], 20 x 20
  RatMatrix M;        // 8 x 8
};

/// Throws SingularJacobian when det dPsi/dY = 0.
BranchJet branch_jet(long nu, const ParameterVector& Y, const HessianSet& h, const HessianAssignment& assignment);

/// M_nu^0 at Y0 with the canonical assignment.
RatMatrix m_matrix(long nu, const HessianSet& h);

struct SpectralReport {
  Rational mu;  // 4 + tr M
  std::size_t mult_minus_one = 0;
  std::size_t mult_zero = 0;
  bool factored = false;  // char poly = lambda^a (lambda+1)^b (lambda - mu)
  std::vector<Rational> char_poly;
};

/// Throws StructureViolation when the char poly has a factor of degree >= 2
/// other than powers of lambda and lambda + 1.
SpectralReport spectral(const RatMatrix& m);

struct AdjugateReport {
  std::vector<Rational> vector;  // adj(I - M/mu) z
  Rational norm2;
  std::size_t adj_rank = 0;
};

/// Throws BadMu when mu = 4 + tr M is 0 or -1.
AdjugateReport adjugate_vector(const RatMatrix& m, std::span<const Rational> z);

/// z_0^nu = vec(kappa_nu C_nu).
std::vector<Rational> z_base(long nu, const ParameterVector& Y);

struct CheckResult {
  std::string name;  // "jacobian", "mu", "adjugate", "structure"
  long nu = 0;
  bool passed = false;
  std::string detail;
};

struct BranchCertificate {
  long nu = 1;
  HessianSet hessians;
  HessianAssignment assignment{};
  Rational jacobian;
  std::optional<RatMatrix> M;
  std::optional<SpectralReport> spectral;
  std::optional<AdjugateReport> adjugate;
};

struct OCCertificate {
  ParameterVector parameters;
  std::vector<BranchCertificate> branches;  // nu = 1..5
  std::optional<SupportData> support;
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Input for one branch: the tensors and how they attach to X_1^nu..X_5^nu.
struct BranchInput {
  HessianSet hessians;
  HessianAssignment assignment{};
};

/// One Hessian set for all branches with the canonical assignment.
OCCertificate certify(const ParameterVector& Y, const HessianSet& h, const std::optional<SupportData>& support);
/// Independent tensors per branch; check failures are recorded, never thrown.
OCCertificate certify_branches(const ParameterVector& Y, const std::array<BranchInput, kPoints>& branches,
                               const std::optional<SupportData>& support);

/// Branch inputs for the test-tensor family at the five evaluation points.
std::array<BranchInput, kPoints> test_tensor_branches(TensorOrder order);

/// Random symmetric rational Hessians near base + perturbation, retried
/// until every branch passes under the canonical assignment.
struct SampleResult {
  HessianSet hessians;
  std::size_t attempts = 0;
};
SampleResult sample_admissible_hessians(const ParameterVector& Y, const HessianSet& base, std::uint64_t seed,
                                        const Rational& radius = Rational(1, 10), std::size_t max_attempts = 50);

}  // namespace t5
