#include "rankmix/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "rankmix/error.hpp"

namespace rankmix {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError(what + ": empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw ParseError(what + ": not a number: '" + t + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty() || t.front() == '-') throw ParseError(what + ": not a nonnegative integer: '" + t + "'");
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw ParseError(what + ": not a nonnegative integer: '" + t + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_double_list(const std::string& text, char sep, const std::string& what) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  if (sep == ' ') {
    while (in >> token) out.push_back(parse_double(token, what));
    return out;
  }
  while (std::getline(in, token, sep)) out.push_back(parse_double(token, what));
  return out;
}

KeyValueFile KeyValueFile::parse(std::istream& in, const std::string& source) {
  KeyValueFile file;
  file.source_ = source;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ParseError(source + ":" + std::to_string(lineno) + ": empty key");
    if (!file.entries_.emplace(key, trim(t.substr(eq + 1))).second) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  return parse(in, path);
}

std::optional<std::string> KeyValueFile::find(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

const std::string& KeyValueFile::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ParseError(source_ + ": missing key '" + key + "'");
  return it->second;
}

double KeyValueFile::get_double(const std::string& key) const {
  return parse_double(get(key), source_ + ": " + key);
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
  return contains(key) ? get_double(key) : fallback;
}

std::uint64_t KeyValueFile::get_uint(const std::string& key) const {
  return parse_uint(get(key), source_ + ": " + key);
}

std::uint64_t KeyValueFile::get_uint(const std::string& key, std::uint64_t fallback) const {
  return contains(key) ? get_uint(key) : fallback;
}

std::vector<double> KeyValueFile::get_doubles(const std::string& key) const {
  return parse_double_list(get(key), ',', source_ + ": " + key);
}

std::vector<double> KeyValueFile::get_doubles(const std::string& key,
                                              std::vector<double> fallback) const {
  return contains(key) ? get_doubles(key) : fallback;
}

std::vector<std::size_t> KeyValueFile::get_sizes(const std::string& key) const {
  std::vector<std::size_t> out;
  std::istringstream in(get(key));
  std::string token;
  while (std::getline(in, token, ',')) {
    out.push_back(static_cast<std::size_t>(parse_uint(token, source_ + ": " + key)));
  }
  return out;
}

std::vector<std::size_t> KeyValueFile::get_sizes(const std::string& key,
                                                 std::vector<std::size_t> fallback) const {
  return contains(key) ? get_sizes(key) : fallback;
}

}  // namespace rankmix
