#pragma once

// Text formats: the key = value configuration files and exact rational /
// matrix literals shared by the command line tool and the tests.

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "t5/jet.hpp"
#include "t5/rat_matrix.hpp"

namespace t5 {

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Lines "key = value"; '#' starts a comment. Throws ParseError on malformed
/// lines and repeated keys, naming source:line.
std::vector<KeyValue> parse_key_values(std::string_view text, std::string_view source = "<input>");
/// Throws ParseError naming the first key not in allowed.
void reject_unknown_keys(const std::vector<KeyValue>& kvs, const std::set<std::string>& allowed,
                         std::string_view source);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Whitespace- or comma-separated rationals.
std::vector<Rational> parse_rational_list(std::string_view text);
/// Rows separated by ';'. Throws ParseError for ragged rows.
RatMatrix parse_matrix(std::string_view text);
/// "a b; c d".
std::string format_matrix(const RatMatrix& m);

/// Keys H1..H5, each a symmetric 4x4 matrix.
HessianSet hessians_from(const std::vector<KeyValue>& kvs, std::string_view source);
HessianSet load_hessians(const std::filesystem::path& path);

}  // namespace t5
