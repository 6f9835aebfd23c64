#pragma once

// JSON forms of the results. Rationals are "p/q" strings, matrices are
// arrays of rows.

#include <optional>
#include <string>

#include "json.hpp"
#include "t5/certificate.hpp"
#include "t5/implicit.hpp"
#include "t5/inequality.hpp"

namespace t5 {

using Json = nlohmann::ordered_json;

/// Always "p/q", also for integers ("5/1").
std::string rational_text(const Rational& r);
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);
Json to_json(std::span<const Rational> v);
std::vector<Rational> rationals_from_json(const Json& j);

Json to_json(const SupportData& s);
SupportData support_from_json(const Json& j);
Json to_json(const SpectralReport& s);
Json to_json(const OCCertificate& c);
OCCertificate certificate_from_json(const Json& j);

struct CertificateFile {
  std::string version;
  std::string input_digest;  // SHA-256 of the canonical input
  OCCertificate payload;
  std::optional<std::string> timestamp;
};

Json to_json(const CertificateFile& f);
CertificateFile certificate_file_from_json(const Json& j);

Json to_json(const GridResult& r, const GridSpec& grid);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Stable text dump: two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace t5
