#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "t5/commands.hpp"
#include "t5/render.hpp"

using namespace t5;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("t5_shell_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

GlobalOptions in(const fs::path& dir) {
  GlobalOptions g;
  g.out_dir = dir;
  return g;
}

std::string run_certify(const fs::path& dir, const CertifyOptions& opt, int expect = 0) {
  std::ostringstream log;
  CHECK(cmd_certify(in(dir), opt, log) == expect);
  return read_file(dir / "certificate.json");
}

}  // namespace

TEST_CASE("reproduce matches the golden file") {
  const auto dir = scratch("reproduce");
  std::ostringstream log;
  CHECK(cmd_reproduce(in(dir), {T5_DATA_DIR "/golden.txt"}, log) == 0);
  const Json j = Json::parse(read_file(dir / "reproduce.json"));
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("values").at("slacks").at("1,2") == "-2470/1");
  CHECK(fs::exists(dir / "configuration.json"));
}

TEST_CASE("tampered golden file names the first mismatch") {
  const auto dir = scratch("tampered");
  std::string text = read_file(T5_DATA_DIR "/golden.txt");
  const auto at = text.find("A3 = 2 -1");
  REQUIRE(at != std::string::npos);
  text.replace(at, 9, "A3 = 2 -2");
  write_file(dir / "golden.txt", text);
  std::ostringstream log;
  CHECK(cmd_reproduce(in(dir), {dir / "golden.txt"}, log) == 1);
  CHECK(log.str().find("mismatch: A3") != std::string::npos);

  const ReproduceReport r = reproduce({dir / "golden.txt"});
  REQUIRE(r.first_failure());
  CHECK(r.first_failure()->name == "A3");
}

TEST_CASE("search with the baseline singleton grid finds one hit") {
  const auto dir = scratch("search");
  write_file(dir / "grid.txt", "# the baseline point\ny5 = 2\nz3 = 1:1:1\n");
  std::ostringstream log;
  CHECK(cmd_search(in(dir), dir / "grid.txt", log) == 0);
  const Json j = Json::parse(read_file(dir / "search.json"));
  CHECK(j.at("grid_size") == 1);
  CHECK(j.at("hits").size() == 1);
}

TEST_CASE("grid parsing") {
  const GridSpec g = parse_grid("z4 = 3:1/2:4\nkappa1 = 2, 5/2\n");
  CHECK(g.axes[2].values == std::vector<Rational>{3, Rational(7, 2), 4});
  CHECK(g.axes[3].values.size() == 2);
  CHECK(g.size() == 6);
  CHECK_THROWS_AS(parse_grid("w = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("z4 = 4:1:3\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("z4 = 1:0:3\n"), ParseError);
}

TEST_CASE("certify: test tensors pass and the file round-trips") {
  const auto dir = scratch("certify");
  const std::string text = run_certify(dir, {});
  const CertificateFile f = certificate_file_from_json(Json::parse(text));
  CHECK(f.payload.passed());
  CHECK(f.payload.branches.size() == 5);
  CHECK(!f.timestamp);
  CHECK(dump(to_json(f)) == text);
  CHECK(f.input_digest == sha256_hex(canonical_config(CertifyConfig{}).dump()));
}

TEST_CASE("certify is deterministic and timestamps stay out of the digest") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  const std::string h = read_file(T5_DATA_DIR "/hessians.txt");
  write_file(a / "h.txt", h);
  CertifyOptions opt;
  opt.config = a / "h.txt";
  CHECK(run_certify(a, opt) == run_certify(b, opt));

  opt.timestamp = true;
  const auto stamped = certificate_file_from_json(Json::parse(run_certify(a, opt)));
  opt.timestamp = false;
  const auto plain = certificate_file_from_json(Json::parse(run_certify(b, opt)));
  CHECK(stamped.timestamp);
  CHECK(stamped.input_digest == plain.input_digest);
  CHECK(dump(to_json(stamped.payload)) == dump(to_json(plain.payload)));
}

TEST_CASE("certify config parsing") {
  const CertifyConfig cfg = parse_certify_config("family = test-tensors\norder = base\nkappa3 = 5\nepsilon = 1/100\n");
  CHECK(cfg.order == TensorOrder::BasePoint);
  CHECK(cfg.parameters[kKappa3] == Rational(5));
  CHECK(*cfg.epsilon == Rational(1, 100));
  CHECK(!cfg.hessians);
  CHECK_THROWS_AS(parse_certify_config("bogus = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_certify_config("family = other\n"), ParseError);
  CHECK_THROWS_AS(parse_certify_config("c = 1 2 3\n"), ParseError);
  CHECK_THROWS_AS(parse_certify_config("H1 = 1 2; 3 4\nH2 = 1\nH3 = 1\nH4 = 1\nH5 = 1\n"), ParseError);

  // Different inputs, different digests.
  CHECK(sha256_hex(canonical_config(cfg).dump()) != sha256_hex(canonical_config(CertifyConfig{}).dump()));
}

TEST_CASE("certify records failing checks instead of throwing") {
  const auto dir = scratch("certify_fail");
  // Base order leaves one branch with a vanishing Jacobian.
  write_file(dir / "cfg.txt", "family = test-tensors\norder = base\n");
  CertifyOptions opt;
  opt.config = dir / "cfg.txt";
  const auto f = certificate_file_from_json(Json::parse(run_certify(dir, opt, 1)));
  CHECK(!f.payload.passed());

  // An epsilon past eps* fails the support check only.
  opt.config.clear();
  opt.epsilon = Rational(1000);
  const auto g = certificate_file_from_json(Json::parse(run_certify(dir, opt, 1)));
  CHECK(!g.payload.support);
  for (const auto& c : g.payload.checks) CHECK(c.passed == (c.name != "support"));
}

TEST_CASE("sample: zero samples give valid empty output") {
  SampleOptions opt;
  opt.count = 0;
  const Json j = Json::parse(sample_points(opt).text);
  CHECK(j.at("points").empty());
  CHECK(j.at("det_margin").empty());
  opt.format = "csv";
  CHECK(sample_points(opt).text == "sample,i,x1,x2,x3,x4,x5,x6,x7,x8\n");
}

TEST_CASE("sample is reproducible for a seed") {
  SampleOptions opt;
  opt.count = 4;
  opt.seed = 11;
  const auto a = sample_points(opt), b = sample_points(opt);
  CHECK(a.passed);
  CHECK(a.text == b.text);
  const Json j = Json::parse(a.text);
  CHECK(j.at("points").size() == 20);
  CHECK(j.at("det_margin").size() == 4);
  opt.seed = 12;
  CHECK(sample_points(opt).text != a.text);
  opt.lambda = 1.5;
  CHECK_THROWS_AS(sample_points(opt), ParseError);
}

TEST_CASE("render: configuration, determinism, degenerate inputs") {
  const auto dir = scratch("render");
  write_file(dir / "conf.json", dump(configuration_json(baseline_parameters())));
  std::ostringstream log;
  CHECK(cmd_render(in(dir), dir / "conf.json", "a.svg", log) == 0);
  CHECK(cmd_render(in(dir), dir / "conf.json", "b.svg", log) == 0);
  const std::string svg = read_file(dir / "a.svg");
  CHECK(svg == read_file(dir / "b.svg"));

  std::size_t circles = 0, texts = 0, lines = 0;
  for (std::size_t p = 0; (p = svg.find("<circle", p)) != std::string::npos; ++p) ++circles;
  for (std::size_t p = 0; (p = svg.find("<text", p)) != std::string::npos; ++p) ++texts;
  for (std::size_t p = 0; (p = svg.find("<line", p)) != std::string::npos; ++p) ++lines;
  CHECK(circles == 10);
  CHECK(texts == 10);
  CHECK(lines == 10);
  CHECK(svg.find("principal plane") != std::string::npos);

  // One point: one labeled dot on the coordinate fallback.
  const Json one = Json::parse(R"({"points": [{"label": "Q", "x": [1, 2, 3, 4, 5, 6, 7, 8]}]})");
  const std::string dot = render_svg(render_input_from_json(one));
  CHECK(dot.find("coordinates 1 and 2") != std::string::npos);
  CHECK(dot.find(">Q</text>") != std::string::npos);
  CHECK(dot.find("<line") == std::string::npos);

  // Collinear points do not span a plane.
  const Json col = Json::parse(
      R"({"points": [{"x": [0,0,0,0,0,0,0,0]}, {"x": [1,0,0,0,0,0,0,0]}, {"x": [2,0,0,0,0,0,0,0]}]})");
  CHECK(!fit_projection(render_input_from_json(col).nodes).principal);

  CHECK_THROWS_AS(render_input_from_json(Json::parse(R"({"points": [{"x": [1, 2]}]})")), ParseError);
}
