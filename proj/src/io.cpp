#include "t5/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace t5 {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<KeyValue> parse_key_values(std::string_view text, std::string_view source) {
  std::vector<KeyValue> out;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(std::string_view(raw).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(line);
    if (eq == std::string::npos) throw ParseError(where + ": expected 'key = value'");
    KeyValue kv{trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)), line};
    if (kv.key.empty()) throw ParseError(where + ": empty key");
    if (!seen.insert(kv.key).second) throw ParseError(where + ": repeated key '" + kv.key + "'");
    out.push_back(std::move(kv));
  }
  return out;
}

void reject_unknown_keys(const std::vector<KeyValue>& kvs, const std::set<std::string>& allowed,
                         std::string_view source) {
  for (const auto& kv : kvs)
    if (!allowed.contains(kv.key))
      throw ParseError(std::string(source) + ":" + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::string s(text);
  for (auto& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::vector<Rational> out;
  std::string tok;
  while (in >> tok) out.push_back(Rational::parse(tok));
  return out;
}

RatMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  std::size_t start = 0;
  for (;;) {
    const auto semi = text.find(';', start);
    rows.push_back(parse_rational_list(text.substr(start, semi == std::string_view::npos ? semi : semi - start)));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (rows.empty() || rows[0].empty()) throw ParseError("matrix literal is empty");
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw ParseError("matrix literal has ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string format_matrix(const RatMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += m(i, j).str();
    }
  }
  return out;
}

HessianSet hessians_from(const std::vector<KeyValue>& kvs, std::string_view source) {
  std::map<std::string, const KeyValue*> by_key;
  for (const auto& kv : kvs) by_key[kv.key] = &kv;
  HessianSet h;
  for (std::size_t j = 0; j < kPoints; ++j) {
    const std::string key = "H" + std::to_string(j + 1);
    const auto it = by_key.find(key);
    if (it == by_key.end()) throw ParseError(std::string(source) + ": missing key '" + key + "'");
    const std::string where = std::string(source) + ":" + std::to_string(it->second->line);
    try {
      h[j] = parse_matrix(it->second->value);
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (h[j].rows() != 4 || h[j].cols() != 4) throw ParseError(where + ": " + key + " must be 4x4");
    if (!h[j].is_symmetric()) throw ParseError(where + ": " + key + " must be symmetric");
  }
  return h;
}

HessianSet load_hessians(const std::filesystem::path& path) {
  const auto kvs = parse_key_values(read_file(path), path.string());
  std::set<std::string> allowed;
  for (int j = 1; j <= 5; ++j) allowed.insert("H" + std::to_string(j));
  reject_unknown_keys(kvs, allowed, path.string());
  return hessians_from(kvs, path.string());
}

}  // namespace t5
