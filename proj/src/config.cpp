#include "gpcal/io/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gpcal/errors.hpp"

namespace gpcal {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw ConfigError("config: value '" + text + "' of key '" + key +
                      "' is not a number");
  }
  return v;
}

}  // namespace

void ConfigMap::insert(std::string key, std::string value, long line) {
  if (find(key)) {
    throw ConfigError("config: duplicate key '" + key + "' at line " +
                      std::to_string(line));
  }
  entries_.push_back(Entry{std::move(key), std::move(value), line});
}

const ConfigMap::Entry* ConfigMap::find(const std::string& key) const {
  for (const auto& e : entries_) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

const ConfigMap::Entry& ConfigMap::require(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ConfigError("config: missing required key '" + key + "'");
  return *e;
}

bool ConfigMap::has(const std::string& key) const { return find(key) != nullptr; }

std::string ConfigMap::get_string(const std::string& key) const {
  return require(key).value;
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->value : fallback;
}

double ConfigMap::get_double(const std::string& key) const {
  return parse_double(require(key).value, key);
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
  const Entry* e = find(key);
  return e ? parse_double(e->value, key) : fallback;
}

long ConfigMap::get_long(const std::string& key) const {
  const double v = get_double(key);
  const long l = static_cast<long>(v);
  if (static_cast<double>(l) != v) {
    throw ConfigError("config: key '" + key + "' must be an integer");
  }
  return l;
}

long ConfigMap::get_long(const std::string& key, long fallback) const {
  return has(key) ? get_long(key) : fallback;
}

std::uint64_t ConfigMap::get_u64(const std::string& key) const {
  const std::string& text = require(key).value;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE ||
      text.front() == '-') {
    throw ConfigError("config: key '" + key + "' must be an unsigned integer");
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t ConfigMap::get_u64(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? get_u64(key) : fallback;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
  if (e->value == "false" || e->value == "0" || e->value == "no") return false;
  throw ConfigError("config: key '" + key + "' must be a boolean");
}

Eigen::VectorXd ConfigMap::get_vector(const std::string& key) const {
  std::istringstream in(require(key).value);
  std::vector<double> values;
  std::string token;
  while (in >> token) values.push_back(parse_double(token, key));
  if (values.empty()) {
    throw ConfigError("config: key '" + key + "' holds no numbers");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = values[i];
  }
  return out;
}

void ConfigMap::require_known(const std::vector<std::string>& known) const {
  std::string offenders;
  for (const auto& e : entries_) {
    if (std::find(known.begin(), known.end(), e.key) == known.end()) {
      if (!offenders.empty()) offenders += ", ";
      offenders += "'" + e.key + "' (line " + std::to_string(e.line) + ")";
    }
  }
  if (!offenders.empty()) {
    throw ConfigError("config: unknown keys: " + offenders);
  }
}

ConfigMap parse_config(const std::string& text, const std::string& origin) {
  ConfigMap config;
  config.set_raw_bytes(text);
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    config.insert(key, value, line_no);
  }
  return config;
}

ConfigMap read_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

std::string fingerprint_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;  // FNV offset basis
  for (const unsigned char ch : bytes) {
    hash ^= ch;
    hash *= 1099511628211ull;  // FNV prime
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace gpcal
