#include "t5/report.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace t5 {

std::string rational_text(const Rational& r) { return r.num().get_str() + "/" + r.den().get_str(); }

Json to_json(const Rational& r) { return rational_text(r); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("expected a rational string, got " + j.dump());
  return Rational::parse(j.get<std::string>());
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_text(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("expected a matrix (array of rows)");
  RatMatrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != m.cols()) throw ParseError("matrix rows have different lengths");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rational_from_json(j[i][k]);
  }
  return m;
}

Json to_json(std::span<const Rational> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_text(x));
  return a;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Json to_json(const SupportData& s) {
  Json j;
  j["c"] = to_json(std::span<const Rational>(s.c));
  j["d"] = to_json(std::span<const Rational>(s.d));
  j["epsilon"] = to_json(s.epsilon);
  Json q = Json::array();
  for (const auto& m : s.Qgrad) q.push_back(to_json(m));
  j["Q"] = std::move(q);
  return j;
}

SupportData support_from_json(const Json& j) {
  SupportData s;
  s.c = rationals_from_json(j.at("c"));
  s.d = rationals_from_json(j.at("d"));
  s.epsilon = rational_from_json(j.at("epsilon"));
  for (const auto& m : j.at("Q")) s.Qgrad.push_back(matrix_from_json(m));
  return s;
}

Json to_json(const SpectralReport& s) {
  Json j;
  j["mu"] = to_json(s.mu);
  j["mult_minus_one"] = s.mult_minus_one;
  j["mult_zero"] = s.mult_zero;
  j["factored"] = s.factored;
  j["char_poly"] = to_json(std::span<const Rational>(s.char_poly));
  return j;
}

namespace {

SpectralReport spectral_from_json(const Json& j) {
  SpectralReport s;
  s.mu = rational_from_json(j.at("mu"));
  s.mult_minus_one = j.at("mult_minus_one").get<std::size_t>();
  s.mult_zero = j.at("mult_zero").get<std::size_t>();
  s.factored = j.at("factored").get<bool>();
  s.char_poly = rationals_from_json(j.at("char_poly"));
  return s;
}

}  // namespace

Json to_json(const OCCertificate& c) {
  Json j;
  Json params;
  for (std::size_t i = 0; i < kParams; ++i) params[std::string(param_names()[i])] = to_json(c.parameters[i]);
  j["parameters"] = std::move(params);

  Json branches = Json::array();
  for (const auto& b : c.branches) {
    Json bj;
    bj["nu"] = b.nu;
    Json assign = Json::array();
    for (auto a : b.assignment) assign.push_back(a + 1);
    bj["hessian_at_point"] = std::move(assign);
    Json hs = Json::array();
    for (const auto& h : b.hessians) hs.push_back(to_json(h));
    bj["hessians"] = std::move(hs);
    bj["jacobian"] = to_json(b.jacobian);
    if (b.M) bj["M"] = to_json(*b.M);
    if (b.spectral) bj["spectral"] = to_json(*b.spectral);
    if (b.adjugate) {
      Json a;
      a["vector"] = to_json(std::span<const Rational>(b.adjugate->vector));
      a["norm2"] = to_json(b.adjugate->norm2);
      a["adj_rank"] = b.adjugate->adj_rank;
      bj["adjugate"] = std::move(a);
    }
    branches.push_back(std::move(bj));
  }
  j["branches"] = std::move(branches);
  j["support"] = c.support ? to_json(*c.support) : Json(nullptr);

  Json checks = Json::array();
  for (const auto& k : c.checks) {
    Json kj;
    kj["name"] = k.name;
    kj["nu"] = k.nu;
    kj["passed"] = k.passed;
    kj["detail"] = k.detail;
    checks.push_back(std::move(kj));
  }
  j["checks"] = std::move(checks);
  j["verdict"] = c.passed() ? "pass" : "fail";
  j["scope"] =
      "finite checks at the base configuration: det dPsi/dY != 0, mu not in {0,-1}, adj(I - M/mu) z != 0 for each "
      "branch; the radii rho, eta, beta exist by continuity and are not computed";
  return j;
}

OCCertificate certificate_from_json(const Json& j) {
  OCCertificate c;
  const Json& params = j.at("parameters");
  for (std::size_t i = 0; i < kParams; ++i) c.parameters[i] = rational_from_json(params.at(std::string(param_names()[i])));
  for (const auto& bj : j.at("branches")) {
    BranchCertificate b;
    b.nu = bj.at("nu").get<long>();
    const auto& assign = bj.at("hessian_at_point");
    for (std::size_t k = 0; k < kPoints; ++k) b.assignment[k] = assign.at(k).get<std::size_t>() - 1;
    const auto& hs = bj.at("hessians");
    for (std::size_t k = 0; k < kPoints; ++k) b.hessians[k] = matrix_from_json(hs.at(k));
    b.jacobian = rational_from_json(bj.at("jacobian"));
    if (bj.contains("M")) b.M = matrix_from_json(bj.at("M"));
    if (bj.contains("spectral")) b.spectral = spectral_from_json(bj.at("spectral"));
    if (bj.contains("adjugate")) {
      AdjugateReport a;
      a.vector = rationals_from_json(bj.at("adjugate").at("vector"));
      a.norm2 = rational_from_json(bj.at("adjugate").at("norm2"));
      a.adj_rank = bj.at("adjugate").at("adj_rank").get<std::size_t>();
      b.adjugate = std::move(a);
    }
    c.branches.push_back(std::move(b));
  }
  if (!j.at("support").is_null()) c.support = support_from_json(j.at("support"));
  for (const auto& kj : j.at("checks"))
    c.checks.push_back({kj.at("name").get<std::string>(), kj.at("nu").get<long>(), kj.at("passed").get<bool>(),
                        kj.at("detail").get<std::string>()});
  return c;
}

Json to_json(const CertificateFile& f) {
  Json j;
  j["toolkit_version"] = f.version;
  j["input_digest"] = f.input_digest;
  if (f.timestamp) j["timestamp"] = *f.timestamp;
  j["certificate"] = to_json(f.payload);
  return j;
}

CertificateFile certificate_file_from_json(const Json& j) {
  CertificateFile f;
  f.version = j.at("toolkit_version").get<std::string>();
  f.input_digest = j.at("input_digest").get<std::string>();
  if (j.contains("timestamp")) f.timestamp = j.at("timestamp").get<std::string>();
  f.payload = certificate_from_json(j.at("certificate"));
  return f;
}

Json to_json(const GridResult& r, const GridSpec& grid) {
  Json j;
  Json axes;
  for (std::size_t a = 0; a < 14; ++a)
    axes[SearchParams::names()[a]] = to_json(std::span<const Rational>(grid.axes[a].values));
  j["axes"] = std::move(axes);
  j["grid_size"] = grid.size();
  j["evaluated"] = r.evaluated;
  j["skipped"] = r.skipped;
  Json hits = Json::array();
  for (const auto& h : r.hits) {
    Json hj;
    hj["index"] = h.index;
    Json p;
    for (std::size_t a = 0; a < 14; ++a) p[SearchParams::names()[a]] = to_json(h.params.at(a));
    hj["params"] = std::move(p);
    Json x;
    const auto& labels = system_column_labels();
    for (std::size_t k = 0; k < labels.size(); ++k) x[labels[k]] = to_json(h.solution.x[k]);
    hj["solution"] = std::move(x);
    hj["margin"] = to_json(h.solution.margin);
    hits.push_back(std::move(hj));
  }
  j["hits"] = std::move(hits);
  return j;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256_hex: digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace t5
