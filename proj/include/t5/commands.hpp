#pragma once

// The t5cert subcommands. Each writes its artifacts under out_dir, prints a
// short summary to `out`, and returns the process exit status (0 iff every
// requested check passed).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "t5/inequality.hpp"
#include "t5/io.hpp"
#include "t5/report.hpp"

namespace t5 {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Directory holding golden.txt and hessians.txt; $T5_DATA_DIR overrides the
/// build-time default.
std::filesystem::path default_data_dir();

struct GlobalOptions {
  std::filesystem::path out_dir = ".";
  bool allow_kappa_le_one = false;
};

/// The support constants c_1..c_5, d_1..d_5 of the base configuration.
const std::vector<Rational>& baseline_c();
const std::vector<Rational>& baseline_d();

// ---- reproduce ---------------------------------------------------------------

struct ReproduceOptions {
  std::filesystem::path golden;  // empty: default_data_dir()/golden.txt
};

struct GoldenCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ReproduceReport {
  std::vector<GoldenCheck> checks;
  Json values;
  bool passed() const;
  const GoldenCheck* first_failure() const;
};

ReproduceReport reproduce(const ReproduceOptions& opt);
/// {"points": X_1..X_5, "vertices": P_1..P_5} of the base configuration.
Json configuration_json(const ParameterVector& Y);
int cmd_reproduce(const GlobalOptions& g, const ReproduceOptions& opt, std::ostream& out);

// ---- search ------------------------------------------------------------------

/// Keys are SearchParams::names(); values are rational lists or lo:step:hi.
/// Missing keys keep the baseline value.
GridSpec parse_grid(std::string_view text, std::string_view source = "<grid>");
int cmd_search(const GlobalOptions& g, const std::filesystem::path& grid_file, std::ostream& out);

// ---- certify -----------------------------------------------------------------

struct CertifyConfig {
  ParameterVector parameters = baseline_parameters();
  std::optional<HessianSet> hessians;  // else the test-tensor family
  TensorOrder order = TensorOrder::PointOrder;
  std::vector<Rational> c = baseline_c();
  std::vector<Rational> d = baseline_d();
  std::optional<Rational> epsilon;  // default eps*/2
};

/// Keys: H1..H5 | family = test-tensors [order = point|base]; any parameter
/// name (z1 ... kappa5); c, d (five rationals each); epsilon.
CertifyConfig parse_certify_config(std::string_view text, std::string_view source = "<config>");
/// Canonical JSON of the effective inputs; its SHA-256 is the input digest.
Json canonical_config(const CertifyConfig& cfg);
CertificateFile certify_file(const CertifyConfig& cfg, const std::optional<std::string>& timestamp = std::nullopt);

struct CertifyOptions {
  std::filesystem::path config;  // empty: test tensors at the base configuration
  std::optional<Rational> epsilon;
  bool timestamp = false;
};
int cmd_certify(const GlobalOptions& g, const CertifyOptions& opt, std::ostream& out);

// ---- sample ------------------------------------------------------------------

struct SampleOptions {
  double ball_radius = 1e-3;
  double lambda = 0.9;
  std::size_t count = 10;
  std::uint64_t seed = 1;
  std::string format = "json";   // json | csv
  std::filesystem::path hessians;  // empty: default_data_dir()/hessians.txt
};

struct SampleOutput {
  std::string text;
  bool passed = true;
};
SampleOutput sample_points(const SampleOptions& opt);
int cmd_sample(const GlobalOptions& g, const SampleOptions& opt, std::ostream& out);

// ---- render ------------------------------------------------------------------

int cmd_render(const GlobalOptions& g, const std::filesystem::path& input, const std::filesystem::path& output,
               std::ostream& out);

}  // namespace t5
