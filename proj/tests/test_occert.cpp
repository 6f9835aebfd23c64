#include "doctest.h"
#include "t5/certificate.hpp"
#include "test_support.hpp"

using namespace t5;

namespace {

HessianSet identity_set() {
  HessianSet h;
  for (auto& m : h) m = RatMatrix::identity(4);
  return h;
}

HessianSet near_identity(std::uint64_t seed) {
  return sample_admissible_hessians(baseline_parameters(), identity_set(), seed).hessians;
}

RatMatrix scaled_integer(const RatMatrix& m, const Rational& s) { return s * m; }

bool all_integer(const RatMatrix& m) {
  for (const auto& e : m.entries())
    if (e.den() != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("block identities of the inverse") {
  const HessianSet h = near_identity(1);
  for (long nu = 1; nu <= 5; ++nu) {
    const BranchJet b = branch_jet(nu, baseline_parameters(), h, canonical_assignment(nu));
    const RatMatrix r1s1 = b.jet.R[0] * b.jet.S[0];
    for (std::size_t k = 0; k < 5; ++k) {
      const RatMatrix tk = b.inverse.block(0, 4 * k, 20, 4);
      CHECK(r1s1 * tk == (k == 0 ? RatMatrix::identity(4) : RatMatrix::zero(4, 4)));
    }
    // M = -(S1 T1 R1 + ... + S1 T5 R5)
    RatMatrix sum(8, 8);
    for (std::size_t k = 0; k < 5; ++k) sum += b.jet.S[0] * b.inverse.block(0, 4 * k, 20, 4) * b.jet.R[k];
    CHECK(b.M == -sum);
    CHECK((b.jet.R[0] * (RatMatrix::identity(8) + b.M)).is_zero());
    CHECK(rank(b.M) <= 5);
  }
}

TEST_CASE("m_matrix rejects a singular Jacobian") {
  CHECK_THROWS_AS(m_matrix(2, test_tensor_set(0, 0)), SingularJacobian);
}

TEST_CASE("spectral structure") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    HessianSet h;
    for (auto& m : h) m = testing::random_symmetric(rng, 4, 5, 3);
    const long nu = 1 + trial % 5;
    RatMatrix M;
    try {
      M = m_matrix(nu, h);
    } catch (const SingularJacobian&) {
      continue;
    }
    const auto s = spectral(M);
    CHECK(s.mu == Rational(4) + M.trace());
    CHECK(s.mult_zero >= 3);
    CHECK(s.mult_minus_one >= 4);
    CHECK(s.factored);
    // Eigenvalues with multiplicity sum to the trace.
    const Rational eig_sum = Rational(-static_cast<long>(s.mult_minus_one)) +
                             (s.mult_zero + s.mult_minus_one == 8 ? Rational(0) : s.mu);
    CHECK(eig_sum == M.trace());
    // -c_7 of the monic char poly is the trace.
    CHECK(-s.char_poly[7] == M.trace());
  }
}

TEST_CASE("spectral edge cases") {
  const auto z = spectral(RatMatrix::zero(8, 8));
  CHECK(z.mu == Rational(4));
  CHECK(z.mult_zero == 8);
  CHECK(z.mult_minus_one == 0);
  CHECK_FALSE(z.factored);

  const std::vector<Rational> d{0, 0, 0, -1, -1, -1, -1, 3};
  const auto f = spectral(RatMatrix::diagonal(d));
  CHECK(f.factored);
  CHECK(f.mu == Rational(3));

  const std::vector<Rational> bad{0, 0, 0, -1, -1, -1, 2, 3};
  CHECK_THROWS_AS(spectral(RatMatrix::diagonal(bad)), StructureViolation);
}

TEST_CASE("adjugate vector") {
  const HessianSet h = near_identity(2);
  const ParameterVector Y = baseline_parameters();
  std::mt19937_64 rng(42);
  for (long nu = 1; nu <= 5; ++nu) {
    const RatMatrix M = m_matrix(nu, h);
    const auto z = z_base(nu, Y);
    CHECK(RatMatrix::column(z) == vec(Y.kappa(nu) * build_rank_one(Y)[wrap(nu)]));
    const auto r = adjugate_vector(M, z);
    CHECK(r.adj_rank == 1);
    CHECK_FALSE(r.norm2.is_zero());
    const Rational mu = Rational(4) + M.trace();
    const RatMatrix base = RatMatrix::identity(8) - mu.inv() * M;
    for (int t = 0; t < 3; ++t) {
      const auto b = testing::random_vector(rng, 8);
      CHECK(determinant(base + RatMatrix::outer(z, b)) == dot(r.vector, b));
    }
  }
  CHECK_THROWS_AS(adjugate_vector(-Rational(1, 2) * RatMatrix::identity(8), std::vector<Rational>(8)), BadMu);
  CHECK_THROWS_AS(adjugate_vector(-Rational(5, 8) * RatMatrix::identity(8), std::vector<Rational>(8)), BadMu);
}

TEST_CASE("j_nu times M is polynomial in integer Hessians") {
  std::mt19937_64 rng(43);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    HessianSet h;
    for (auto& m : h) m = testing::random_symmetric(rng, 4, 4, 1);
    const long nu = 1 + trial % 5;
    try {
      const BranchJet b = branch_jet(nu, baseline_parameters(), h, canonical_assignment(nu));
      CHECK(all_integer(scaled_integer(b.M, b.jacobian)));
      ++checked;
    } catch (const SingularJacobian&) {
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("certify") {
  const ParameterVector Y = baseline_parameters();
  SUBCASE("sampled near identity passes") {
    const auto c = certify(Y, near_identity(3), std::nullopt);
    CHECK(c.passed());
    CHECK(c.branches.size() == 5);
    CHECK(c.checks.size() == 20);
  }
  SUBCASE("identity Hessians fail on mu") {
    const auto c = certify(Y, identity_set(), std::nullopt);
    CHECK_FALSE(c.passed());
    for (const auto& k : c.checks)
      if (k.name == "mu") CHECK_FALSE(k.passed);
  }
  SUBCASE("a singular branch is recorded, not thrown") {
    auto in = test_tensor_branches(TensorOrder::BasePoint);
    const auto c = certify_branches(Y, in, std::nullopt);
    CHECK_FALSE(c.passed());
    bool found = false;
    for (const auto& k : c.checks)
      if (k.name == "jacobian" && k.nu == 2) {
        CHECK_FALSE(k.passed);
        found = true;
      }
    CHECK(found);
  }
  SUBCASE("test-tensor family in point order passes every check") {
    const auto c = certify_branches(Y, test_tensor_branches(TensorOrder::PointOrder), std::nullopt);
    CHECK(c.passed());
    for (const auto& b : c.branches) {
      REQUIRE(b.spectral.has_value());
      CHECK(b.spectral->mult_zero == 3);
      CHECK(b.spectral->mult_minus_one == 4);
    }
  }
  SUBCASE("deterministic") {
    const auto a = certify(Y, near_identity(4), std::nullopt);
    const auto b = certify(Y, near_identity(4), std::nullopt);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t k = 0; k < a.checks.size(); ++k) CHECK(a.checks[k].detail == b.checks[k].detail);
  }
}
