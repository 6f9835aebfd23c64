#include "t5/certificate.hpp"

#include <random>

namespace t5 {

namespace {

// Exact division of p by (lambda - r); returns false when r is not a root.
bool divide_root(std::vector<Rational>& p, const Rational& r) {
  if (p.size() < 2) return false;
  const std::size_t n = p.size() - 1;
  std::vector<Rational> q(n);
  Rational carry;
  for (std::size_t k = n; k-- > 0;) {
    carry = p[k + 1] + (k + 1 < n ? r * q[k + 1] : Rational(0));
    q[k] = carry;
  }
  if (!(p[0] + r * q[0]).is_zero()) return false;
  p = std::move(q);
  return true;
}

std::vector<Rational> poly_mul_linear(const std::vector<Rational>& p, const Rational& r) {
  // p(lambda) * (lambda - r)
  std::vector<Rational> out(p.size() + 1);
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k + 1] += p[k];
    out[k] -= r * p[k];
  }
  return out;
}

std::vector<Rational> model_poly(std::size_t a, std::size_t b, const Rational& mu) {
  std::vector<Rational> p{Rational(1)};
  for (std::size_t k = 0; k < a; ++k) p = poly_mul_linear(p, Rational(0));
  for (std::size_t k = 0; k < b; ++k) p = poly_mul_linear(p, Rational(-1));
  return poly_mul_linear(p, mu);
}

Rational random_small(std::mt19937_64& rng, const Rational& radius) {
  // Uniform on {-8..8}/8 scaled by radius; std distributions are not portable.
  const long k = static_cast<long>(rng() % 17) - 8;
  return radius * Rational(k, 8);
}

}  // namespace

BranchJet branch_jet(long nu, const ParameterVector& Y, const HessianSet& h, const HessianAssignment& assignment) {
  BranchJet b;
  b.jet = assemble(nu, Y, h, assignment);
  b.jacobian = determinant(b.jet.dPsi_dY);
  if (b.jacobian.is_zero())
    throw SingularJacobian("branch " + std::to_string(nu) + ": det dPsi/dY = 0");
  b.inverse = inverse(b.jet.dPsi_dY);
  b.M = -(b.jet.S[0] * (b.inverse * b.jet.dPsi_dQ));
  return b;
}

RatMatrix m_matrix(long nu, const HessianSet& h) {
  return branch_jet(nu, baseline_parameters(), h, canonical_assignment(nu)).M;
}

SpectralReport spectral(const RatMatrix& m) {
  if (!m.square()) throw ShapeError("spectral: matrix must be square");
  SpectralReport r;
  r.char_poly = char_poly(m);
  r.mu = Rational(4) + m.trace();
  std::vector<Rational> rest = r.char_poly;
  while (divide_root(rest, Rational(0))) ++r.mult_zero;
  while (divide_root(rest, Rational(-1))) ++r.mult_minus_one;
  const std::size_t deg = rest.size() - 1;
  if (deg >= 2)
    throw StructureViolation("spectral: characteristic polynomial has a factor of degree " + std::to_string(deg) +
                             " besides lambda and lambda + 1");
  std::size_t a = r.mult_zero, b = r.mult_minus_one;
  if (deg == 0) {
    if (r.mu.is_zero() && a > 0) --a;
    else if (r.mu == Rational(-1) && b > 0) --b;
    else return r;
  }
  r.factored = model_poly(a, b, r.mu) == r.char_poly;
  return r;
}

AdjugateReport adjugate_vector(const RatMatrix& m, std::span<const Rational> z) {
  if (m.rows() != 8 || m.cols() != 8 || z.size() != 8) throw ShapeError("adjugate_vector: expected 8x8 and 8");
  const Rational mu = Rational(4) + m.trace();
  if (mu.is_zero() || mu == Rational(-1)) throw BadMu("adjugate_vector: mu = " + mu.str());
  const RatMatrix adj = adjugate(RatMatrix::identity(8) - mu.inv() * m);
  AdjugateReport r;
  r.vector = adj * z;
  r.norm2 = dot(r.vector, r.vector);
  r.adj_rank = rank(adj);
  return r;
}

std::vector<Rational> z_base(long nu, const ParameterVector& Y) {
  const auto c = rank_one_matrices(Y);
  const Mat42<Rational> z = z_point(nu, 1, Y, c);
  return {z.begin(), z.end()};
}

bool OCCertificate::passed() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

OCCertificate certify(const ParameterVector& Y, const HessianSet& h, const std::optional<SupportData>& support) {
  std::array<BranchInput, kPoints> in;
  for (long nu = 1; nu <= 5; ++nu) in[nu - 1] = {h, canonical_assignment(nu)};
  return certify_branches(Y, in, support);
}

OCCertificate certify_branches(const ParameterVector& Y, const std::array<BranchInput, kPoints>& branches,
                               const std::optional<SupportData>& support) {
  OCCertificate cert;
  cert.parameters = Y;
  cert.support = support;
  for (long nu = 1; nu <= 5; ++nu) {
    const BranchInput& in = branches[nu - 1];
    BranchCertificate b;
    b.nu = nu;
    b.hessians = in.hessians;
    b.assignment = in.assignment;
    const auto record = [&](const std::string& name, bool ok, std::string detail) {
      cert.checks.push_back({name, nu, ok, std::move(detail)});
    };
    try {
      const BranchJet bj = branch_jet(nu, Y, in.hessians, in.assignment);
      b.jacobian = bj.jacobian;
      b.M = bj.M;
      record("jacobian", true, "det dPsi/dY = " + bj.jacobian.str());
    } catch (const SingularJacobian& e) {
      record("jacobian", false, e.what());
      cert.branches.push_back(std::move(b));
      continue;
    } catch (const Error& e) {
      record("jacobian", false, e.what());
      cert.branches.push_back(std::move(b));
      continue;
    }

    try {
      b.spectral = spectral(*b.M);
      const auto& s = *b.spectral;
      const bool structure = s.factored && s.mult_zero >= 3 && s.mult_minus_one >= 4;
      record("structure", structure,
             "mult(0) = " + std::to_string(s.mult_zero) + ", mult(-1) = " + std::to_string(s.mult_minus_one));
    } catch (const StructureViolation& e) {
      record("structure", false, e.what());
    }

    const Rational mu = Rational(4) + b.M->trace();
    const bool mu_ok = !mu.is_zero() && mu != Rational(-1);
    record("mu", mu_ok, "mu = " + mu.str());
    if (mu_ok) {
      b.adjugate = adjugate_vector(*b.M, z_base(nu, Y));
      record("adjugate", !b.adjugate->norm2.is_zero() && b.adjugate->adj_rank == 1,
             "|adj z|^2 = " + b.adjugate->norm2.str() + ", rank adj = " + std::to_string(b.adjugate->adj_rank));
    } else {
      record("adjugate", false, "skipped: mu in {0, -1}");
    }
    cert.branches.push_back(std::move(b));
  }
  return cert;
}

std::array<BranchInput, kPoints> test_tensor_branches(TensorOrder order) {
  std::array<BranchInput, kPoints> in;
  for (long nu = 1; nu <= 5; ++nu) {
    const auto [s, t] = nonzero_jacobian_point(nu);
    in[nu - 1] = {test_tensor_set(s, t), assignment_for(nu, order)};
  }
  return in;
}

SampleResult sample_admissible_hessians(const ParameterVector& Y, const HessianSet& base, std::uint64_t seed,
                                        const Rational& radius, std::size_t max_attempts) {
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    HessianSet h = base;
    for (auto& m : h)
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) {
          const Rational e = random_small(rng, radius);
          m(i, j) += e;
          if (i != j) m(j, i) += e;
        }
    if (certify(Y, h, std::nullopt).passed()) return {h, attempt};
  }
  throw Error("sample_admissible_hessians: no admissible set found in " + std::to_string(max_attempts) +
              " attempts");
}

}  // namespace t5
