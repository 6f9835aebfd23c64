#include "t5/commands.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <map>
#include <ostream>
#include <set>

#include "t5/certificate.hpp"
#include "t5/implicit.hpp"
#include "t5/render.hpp"
#include "t5/support.hpp"

#ifndef T5_DEFAULT_DATA_DIR
#define T5_DEFAULT_DATA_DIR "data"
#endif

namespace t5 {

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("T5_DATA_DIR"); env && *env) return env;
  return T5_DEFAULT_DATA_DIR;
}

const std::vector<Rational>& baseline_c() {
  static const std::vector<Rational> c{0, -3650, -3318, 5044, 580};
  return c;
}

const std::vector<Rational>& baseline_d() {
  static const std::vector<Rational> d{58, Rational(-15, 2), 772, 57, 376};
  return d;
}

namespace {

std::filesystem::path resolve(const GlobalOptions& g, const std::filesystem::path& p) {
  return p.is_absolute() ? p : g.out_dir / p;
}

void write_output(const GlobalOptions& g, const std::filesystem::path& name, std::string_view text) {
  const auto path = resolve(g, name);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  write_file(path, text);
}

std::vector<RatMatrix> base_points(const ParameterVector& Y) {
  const auto x = assemble_X(1, Y, RatMatrix::zero(4, 2));
  return {x.begin(), x.end()};
}

std::string join(std::span<const Rational> v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.str();
  return s;
}

}  // namespace

// ---- reproduce ---------------------------------------------------------------

bool ReproduceReport::passed() const { return first_failure() == nullptr; }

const GoldenCheck* ReproduceReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

Json configuration_json(const ParameterVector& Y) {
  const TauConfiguration cfg = TauConfiguration::from_parameters(Y);
  const auto x = cfg.points();
  const auto p = cfg.vertex_points();
  Json j;
  Json pts = Json::array(), vs = Json::array();
  for (std::size_t k = 0; k < kPoints; ++k) {
    pts.push_back(Json{{"label", "X" + std::to_string(k + 1)}, {"matrix", to_json(x[k])}});
    vs.push_back(Json{{"label", "P" + std::to_string(k + 1)}, {"matrix", to_json(p[k])}});
  }
  j["points"] = std::move(pts);
  j["vertices"] = std::move(vs);
  return j;
}

ReproduceReport reproduce(const ReproduceOptions& opt) {
  const auto path = opt.golden.empty() ? default_data_dir() / "golden.txt" : opt.golden;
  const auto kvs = parse_key_values(read_file(path), path.string());
  std::map<std::string, std::string> golden;
  for (const auto& kv : kvs) golden[kv.key] = kv.value;

  ReproduceReport r;
  const auto add = [&](std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  // Compares a golden entry against a computed value; parse problems count as mismatches.
  const auto compare_matrix = [&](const std::string& key, const RatMatrix& computed) {
    const auto it = golden.find(key);
    if (it == golden.end()) return add(key, false, "missing from golden file");
    try {
      const RatMatrix g = parse_matrix(it->second);
      add(key, g == computed, g == computed ? "" : "computed " + format_matrix(computed) + ", golden " + it->second);
    } catch (const Error& e) {
      add(key, false, e.what());
    }
  };
  const auto compare_list = [&](const std::string& key, std::span<const Rational> computed) {
    const auto it = golden.find(key);
    if (it == golden.end()) return add(key, false, "missing from golden file");
    try {
      const auto g = parse_rational_list(it->second);
      const bool ok = std::equal(g.begin(), g.end(), computed.begin(), computed.end());
      add(key, ok, ok ? "" : "computed " + join(computed) + ", golden " + it->second);
    } catch (const Error& e) {
      add(key, false, e.what());
    }
  };

  const ParameterVector Y = baseline_parameters();
  const auto C = build_rank_one(Y);
  const auto X = base_points(Y);
  for (std::size_t j = 0; j < kPoints; ++j) compare_matrix("C" + std::to_string(j + 1), C[j]);
  for (std::size_t j = 0; j < kPoints; ++j) compare_matrix("A" + std::to_string(j + 1), upper_block(X[j]));
  for (std::size_t j = 0; j < kPoints; ++j) compare_matrix("B" + std::to_string(j + 1), lower_block(X[j]));

  std::vector<Rational> constants = baseline_c();
  constants.insert(constants.end(), baseline_d().begin(), baseline_d().end());
  compare_list("constants", constants);
  compare_list("q4", std::vector<Rational>{Y.q(4)[0], Y.q(4)[1]});
  compare_list("q5", std::vector<Rational>{Y.q(5)[0], Y.q(5)[1]});

  // The inequalities are checked with the printed constants.
  std::vector<Rational> c = baseline_c(), d = baseline_d();
  if (golden.count("constants")) {
    try {
      const auto g = parse_rational_list(golden["constants"]);
      if (g.size() == 10) {
        c.assign(g.begin(), g.begin() + 5);
        d.assign(g.begin() + 5, g.end());
      }
    } catch (const Error&) {
    }
  }
  const SlackTable slacks = check_ineq3(X, c, d);
  add("ineq3_strict", slacks.all_negative(), "20 slacks");
  compare_list("slack12", std::vector<Rational>{slacks.at(1, 2)});
  Json slack_json;
  for (std::size_t k = 0; k < slacks.pairs.size(); ++k)
    slack_json[std::to_string(slacks.pairs[k].first) + "," + std::to_string(slacks.pairs[k].second)] =
        to_json(slacks.slack[k]);

  const InequalitySystem sys = build_system(SearchParams::baseline());
  const StrictResult lp = solve_strict(sys);
  Json lp_json;
  if (const auto* sol = std::get_if<FeasibleSolution>(&lp)) {
    add("lp_witness", true, "margin " + sol->margin.str());
    for (std::size_t k = 0; k < sol->x.size(); ++k) lp_json[system_column_labels()[k]] = to_json(sol->x[k]);
  } else {
    add("lp_witness", false, "system reported infeasible");
  }
  const auto printed = sys.evaluate(pack_unknowns(c, d, Y.q(4), Y.q(5)));
  bool printed_ok = true;
  for (const auto& v : printed) printed_ok = printed_ok && v.sign() < 0;
  add("printed_solution", printed_ok, "A x < 0 at the printed (c, d, q4, q5)");

  Json g_json;
  for (const auto order : {TensorOrder::PointOrder, TensorOrder::BasePoint}) {
    const std::string suffix = order == TensorOrder::PointOrder ? "" : "_base";
    for (long nu = 1; nu <= 5; ++nu) {
      const auto [s, t] = nonzero_jacobian_point(nu);
      const Rational g = g_nu(nu, s, t, order);
      const std::string key = "g" + std::to_string(nu) + suffix;
      g_json[key] = to_json(g);
      compare_list(key, std::vector<Rational>{g});
      if (order == TensorOrder::PointOrder) add("jacobian_nonzero_" + std::to_string(nu), !g.is_zero(), g.str());
    }
  }

  const OCCertificate cert = certify_branches(Y, test_tensor_branches(TensorOrder::PointOrder), std::nullopt);
  add("test_tensor_certificate", cert.passed(), "point order, all five branches");

  Json eps_json;
  const auto star = slacks.all_negative() ? max_epsilon(X, c, d) : std::nullopt;
  add("eps_star_positive", star && star->sign() > 0,
      star ? star->str() : slacks.all_negative() ? "unbounded" : "ineq3 not strict");
  if (star) {
    const bool half = check_ineq2(X, c, d, *star / Rational(2)).all_negative();
    const bool at = check_ineq2(X, c, d, *star).all_negative();
    add("ineq2_strict_at_half", half, "");
    add("ineq2_not_strict_at_star", !at, "");
    eps_json["eps_star"] = to_json(*star);
  }

  r.values["slacks"] = std::move(slack_json);
  r.values["lp_witness"] = std::move(lp_json);
  r.values["jacobians"] = std::move(g_json);
  r.values["epsilon"] = std::move(eps_json);
  return r;
}

int cmd_reproduce(const GlobalOptions& g, const ReproduceOptions& opt, std::ostream& out) {
  const ReproduceReport r = reproduce(opt);
  Json j;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = std::move(checks);
  j["values"] = r.values;
  j["verdict"] = r.passed() ? "pass" : "fail";
  write_output(g, "reproduce.json", dump(j));
  write_output(g, "configuration.json", dump(configuration_json(baseline_parameters())));

  std::size_t ok = 0;
  for (const auto& c : r.checks) ok += c.passed;
  out << "reproduce: " << ok << "/" << r.checks.size() << " checks passed\n";
  if (const auto* f = r.first_failure()) {
    out << "mismatch: " << f->name << (f->detail.empty() ? "" : ": " + f->detail) << "\n";
    return 1;
  }
  return 0;
}

// ---- search ------------------------------------------------------------------

namespace {

std::vector<Rational> parse_axis(const std::string& value, const std::string& where) {
  if (value.find(':') == std::string::npos) return parse_rational_list(value);
  const auto a = value.find(':'), b = value.find(':', a + 1);
  if (b == std::string::npos || value.find(':', b + 1) != std::string::npos)
    throw ParseError(where + ": ranges are lo:step:hi");
  const Rational lo = Rational::parse(value.substr(0, a));
  const Rational step = Rational::parse(value.substr(a + 1, b - a - 1));
  const Rational hi = Rational::parse(value.substr(b + 1));
  if (step.sign() <= 0) throw ParseError(where + ": range step must be positive");
  if (hi < lo) throw ParseError(where + ": range is empty");
  std::vector<Rational> v;
  for (Rational x = lo; x <= hi; x += step) {
    if (v.size() >= 100000) throw ParseError(where + ": range has too many values");
    v.push_back(x);
  }
  return v;
}

}  // namespace

GridSpec parse_grid(std::string_view text, std::string_view source) {
  const auto kvs = parse_key_values(text, source);
  const auto& names = SearchParams::names();
  reject_unknown_keys(kvs, std::set<std::string>(names.begin(), names.end()), source);
  GridSpec grid = GridSpec::singleton(SearchParams::baseline());
  for (const auto& kv : kvs) {
    const std::string where = std::string(source) + ":" + std::to_string(kv.line);
    const std::size_t a = std::find(names.begin(), names.end(), kv.key) - names.begin();
    try {
      grid.axes[a].values = parse_axis(kv.value, where);
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      throw ParseError(msg.rfind(where, 0) == 0 ? msg : where + ": " + msg);
    }
    if (grid.axes[a].values.empty()) throw ParseError(where + ": no values for " + kv.key);
  }
  return grid;
}

int cmd_search(const GlobalOptions& g, const std::filesystem::path& grid_file, std::ostream& out) {
  const GridSpec grid = grid_file.empty() ? GridSpec::singleton(SearchParams::baseline())
                                          : parse_grid(read_file(grid_file), grid_file.string());
  const GridResult r = grid_search(grid, g.allow_kappa_le_one);
  write_output(g, "search.json", dump(to_json(r, grid)));
  out << "search: " << r.evaluated << " of " << grid.size() << " grid points evaluated, " << r.hits.size()
      << " feasible\n";
  return r.hits.empty() ? 1 : 0;
}

// ---- certify -----------------------------------------------------------------

CertifyConfig parse_certify_config(std::string_view text, std::string_view source) {
  const auto kvs = parse_key_values(text, source);
  std::set<std::string> allowed{"family", "order", "c", "d", "epsilon"};
  for (int j = 1; j <= 5; ++j) allowed.insert("H" + std::to_string(j));
  for (const auto& n : param_names()) allowed.insert(std::string(n));
  reject_unknown_keys(kvs, allowed, source);

  CertifyConfig cfg;
  std::vector<KeyValue> hkvs;
  std::optional<std::string> family, order;
  for (const auto& kv : kvs) {
    const std::string where = std::string(source) + ":" + std::to_string(kv.line);
    try {
      if (kv.key.size() == 2 && kv.key[0] == 'H') {
        hkvs.push_back(kv);
      } else if (kv.key == "family") {
        family = kv.value;
      } else if (kv.key == "order") {
        order = kv.value;
      } else if (kv.key == "c" || kv.key == "d") {
        auto v = parse_rational_list(kv.value);
        if (v.size() != kPoints) throw ParseError(kv.key + " needs five values");
        (kv.key == "c" ? cfg.c : cfg.d) = std::move(v);
      } else if (kv.key == "epsilon") {
        cfg.epsilon = Rational::parse(kv.value);
      } else {
        cfg.parameters[param_index(kv.key)] = Rational::parse(kv.value);
      }
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (!hkvs.empty() && family) throw ParseError(std::string(source) + ": give either H1..H5 or family, not both");
  if (family && *family != "test-tensors")
    throw ParseError(std::string(source) + ": unknown family '" + *family + "'");
  if (order && !hkvs.empty()) throw ParseError(std::string(source) + ": order applies to the test-tensor family only");
  if (order) {
    if (*order == "point") cfg.order = TensorOrder::PointOrder;
    else if (*order == "base") cfg.order = TensorOrder::BasePoint;
    else throw ParseError(std::string(source) + ": order must be 'point' or 'base'");
  }
  if (!hkvs.empty()) cfg.hessians = hessians_from(hkvs, source);
  return cfg;
}

Json canonical_config(const CertifyConfig& cfg) {
  Json j;
  Json params;
  for (std::size_t i = 0; i < kParams; ++i) params[std::string(param_names()[i])] = to_json(cfg.parameters[i]);
  j["parameters"] = std::move(params);
  if (cfg.hessians) {
    Json hs = Json::array();
    for (const auto& h : *cfg.hessians) hs.push_back(to_json(h));
    j["hessians"] = std::move(hs);
  } else {
    j["family"] = "test-tensors";
    j["order"] = cfg.order == TensorOrder::PointOrder ? "point" : "base";
  }
  j["c"] = to_json(std::span<const Rational>(cfg.c));
  j["d"] = to_json(std::span<const Rational>(cfg.d));
  j["epsilon"] = cfg.epsilon ? to_json(*cfg.epsilon) : Json("default");
  return j;
}

CertificateFile certify_file(const CertifyConfig& cfg, const std::optional<std::string>& timestamp) {
  const ParameterVector& Y = cfg.parameters;
  std::vector<CheckResult> extra;

  const ValidityReport valid = validate(TauConfiguration::from_parameters(Y));
  std::string why;
  for (const auto& f : valid.failures) why += (why.empty() ? "" : "; ") + f;
  extra.push_back({"configuration", 0, valid.ok(), why});

  std::optional<SupportData> support;
  try {
    const auto X = base_points(Y);
    const Rational eps = cfg.epsilon ? *cfg.epsilon : default_epsilon(X, cfg.c, cfg.d);
    support = support_jet(X, cfg.c, cfg.d, eps);
    extra.push_back({"support", 0, true, "epsilon " + eps.str()});
  } catch (const Error& e) {
    extra.push_back({"support", 0, false, e.what()});
  }

  OCCertificate cert;
  if (cfg.hessians) {
    cert = certify(Y, *cfg.hessians, support);
  } else {
    cert = certify_branches(Y, test_tensor_branches(cfg.order), support);
  }
  cert.checks.insert(cert.checks.begin(), extra.begin(), extra.end());

  CertificateFile f;
  f.version = kToolkitVersion;
  f.input_digest = sha256_hex(canonical_config(cfg).dump());
  f.payload = std::move(cert);
  f.timestamp = timestamp;
  return f;
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int cmd_certify(const GlobalOptions& g, const CertifyOptions& opt, std::ostream& out) {
  CertifyConfig cfg = opt.config.empty() ? CertifyConfig{} : parse_certify_config(read_file(opt.config), opt.config.string());
  if (opt.epsilon) cfg.epsilon = opt.epsilon;
  const CertificateFile f = certify_file(cfg, opt.timestamp ? std::optional(utc_now()) : std::nullopt);
  write_output(g, "certificate.json", dump(to_json(f)));
  std::size_t ok = 0;
  for (const auto& c : f.payload.checks) ok += c.passed;
  out << "certify: " << ok << "/" << f.payload.checks.size() << " checks passed, verdict "
      << (f.payload.passed() ? "pass" : "fail") << "\n";
  for (const auto& c : f.payload.checks)
    if (!c.passed) out << "failed: " << c.name << (c.nu ? " nu=" + std::to_string(c.nu) : "") << ": " << c.detail << "\n";
  return f.payload.passed() ? 0 : 1;
}

// ---- sample ------------------------------------------------------------------

SampleOutput sample_points(const SampleOptions& opt) {
  if (opt.format != "json" && opt.format != "csv") throw ParseError("sample: format must be json or csv");
  if (!(opt.ball_radius >= 0)) throw ParseError("sample: ball radius must be non-negative");
  if (!(opt.lambda > 0 && opt.lambda <= 1)) throw ParseError("sample: lambda must lie in (0, 1]");
  const auto hpath = opt.hessians.empty() ? default_data_dir() / "hessians.txt" : opt.hessians;
  const LocalModel model = LocalModel::baseline(load_hessians(hpath));
  const auto qs = sample_ball(base_vertex_vec(1), opt.ball_radius, opt.count, opt.seed);
  const bool check_det = opt.lambda < 1;
  const SigmaReport r = sample_sigma(opt.lambda, qs, model, check_det);

  SampleOutput o;
  o.passed = !check_det || r.all_nonzero();
  if (opt.format == "csv") {
    o.text = "sample,i,x1,x2,x3,x4,x5,x6,x7,x8\n";
    char buf[40];
    for (const auto& p : r.points) {
      o.text += std::to_string(p.sample) + "," + std::to_string(p.i);
      for (int k = 0; k < 8; ++k) {
        std::snprintf(buf, sizeof buf, ",%.17g", p.point(k));
        o.text += buf;
      }
      o.text += "\n";
    }
    return o;
  }
  Json j;
  j["lambda"] = opt.lambda;
  j["ball_radius"] = opt.ball_radius;
  j["count"] = opt.count;
  j["seed"] = opt.seed;
  j["note"] = "model-relative: the energy near the base points is the local quadratic model of the Hessian file";
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json x = Json::array();
    for (int k = 0; k < 8; ++k) x.push_back(p.point(k));
    pts.push_back(Json{{"label", "s" + std::to_string(p.sample) + "." + std::to_string(p.i)},
                       {"sample", p.sample},
                       {"i", p.i},
                       {"x", std::move(x)}});
  }
  j["points"] = std::move(pts);
  j["det_margin"] = r.det_margin;
  o.text = dump(j);
  return o;
}

int cmd_sample(const GlobalOptions& g, const SampleOptions& opt, std::ostream& out) {
  const SampleOutput o = sample_points(opt);
  const std::string name = "sample." + opt.format;
  write_output(g, name, o.text);
  out << "sample: " << opt.count << " centers, lambda " << opt.lambda << ", wrote " << name
      << (o.passed ? "" : " (det(I + lambda M) vanished at some sample)") << "\n";
  return o.passed ? 0 : 1;
}

// ---- render ------------------------------------------------------------------

int cmd_render(const GlobalOptions& g, const std::filesystem::path& input, const std::filesystem::path& output,
               std::ostream& out) {
  Json j;
  try {
    j = Json::parse(read_file(input));
  } catch (const Json::parse_error& e) {
    throw ParseError(input.string() + ": " + e.what());
  }
  const RenderInput in = render_input_from_json(j);
  const auto name = output.empty() ? std::filesystem::path("figure.svg") : output;
  write_output(g, name, render_svg(in));
  out << "render: " << in.nodes.size() << " nodes, wrote " << name.string() << "\n";
  return 0;
}

}  // namespace t5
