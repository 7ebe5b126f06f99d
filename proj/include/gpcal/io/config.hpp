#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gpcal {

// key = value configuration, one pair per line; '#' lines and blank lines
// are skipped. Keys must be unique. The raw file bytes are kept so archives
// can record a fingerprint of exactly what was run.
class ConfigMap {
 public:
  struct Entry {
    std::string key;
    std::string value;
    long line = 0;
  };

  void insert(std::string key, std::string value, long line);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  Eigen::VectorXd get_vector(const std::string& key) const;  // space separated

  // Rejects any key that is not in `known`, reporting all offenders with
  // their line numbers.
  void require_known(const std::vector<std::string>& known) const;

  const std::vector<Entry>& entries() const { return entries_; }
  const std::string& raw_bytes() const { return raw_; }
  void set_raw_bytes(std::string raw) { raw_ = std::move(raw); }

 private:
  const Entry* find(const std::string& key) const;
  const Entry& require(const std::string& key) const;

  std::vector<Entry> entries_;
  std::string raw_;
};

ConfigMap read_config(const std::filesystem::path& path);
ConfigMap parse_config(const std::string& text, const std::string& origin);

// FNV-1a 64-bit hash of the raw bytes, as 16 hex digits.
std::string fingerprint_hex(const std::string& bytes);

}  // namespace gpcal
