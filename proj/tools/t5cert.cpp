#include <iostream>

#include "CLI11.hpp"
#include "t5/commands.hpp"
#include "t5/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for special T5-configurations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", t5::kToolkitVersion);

  t5::GlobalOptions global;
  std::string out_dir = ".";
  app.add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();
  app.add_flag("--allow-kappa-le-1", global.allow_kappa_le_one, "Accept kappa_j <= 1 during search");

  t5::ReproduceOptions rep;
  std::string golden;
  auto* reproduce = app.add_subcommand("reproduce", "Rebuild the base configuration and compare with golden values");
  reproduce->add_option("--golden", golden, "Golden value file (default: data/golden.txt)");

  std::string grid;
  auto* search = app.add_subcommand("search", "Grid search for feasible support constants");
  search->add_option("--grid", grid, "Grid file; without it the baseline point alone is searched");

  t5::CertifyOptions cert;
  std::string cert_config, epsilon;
  auto* certify = app.add_subcommand("certify", "Write an exact certificate for a Hessian set");
  certify->add_option("--hessians,--config", cert_config, "Config file with H1..H5 or family = test-tensors");
  certify->add_option("--epsilon", epsilon, "Polyconvexity margin as p/q (default eps*/2)");
  certify->add_flag("--timestamp", cert.timestamp, "Record the UTC time in the certificate");

  t5::SampleOptions samp;
  std::string hessians;
  auto* sample = app.add_subcommand("sample", "Sample points of Sigma_lambda near the base configuration");
  sample->add_option("--ball-radius", samp.ball_radius, "Radius of the Q ball")->capture_default_str();
  sample->add_option("--lambda", samp.lambda, "Segment parameter in (0, 1]")->capture_default_str();
  sample->add_option("--count", samp.count, "Number of Q samples")->capture_default_str();
  sample->add_option("--seed", samp.seed, "RNG seed")->capture_default_str();
  sample->add_option("--format", samp.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sample->add_option("--hessians", hessians, "Hessian file (default: data/hessians.txt)");

  std::string render_in, render_out;
  auto* render = app.add_subcommand("render", "Draw a configuration or point cloud as SVG");
  render->add_option("--input", render_in, "configuration.json or sample.json")->required();
  render->add_option("--out", render_out, "Output SVG (default: figure.svg)");

  CLI11_PARSE(app, argc, argv);
  global.out_dir = out_dir;

  try {
    if (*reproduce) {
      rep.golden = golden;
      return t5::cmd_reproduce(global, rep, std::cout);
    }
    if (*search) return t5::cmd_search(global, grid, std::cout);
    if (*certify) {
      cert.config = cert_config;
      if (!epsilon.empty()) cert.epsilon = t5::Rational::parse(epsilon);
      return t5::cmd_certify(global, cert, std::cout);
    }
    if (*sample) {
      samp.hessians = hessians;
      return t5::cmd_sample(global, samp, std::cout);
    }
    if (*render) return t5::cmd_render(global, render_in, render_out, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
