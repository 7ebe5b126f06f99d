#include "gpcal/io/archive.hpp"

#include <cstdlib>
#include <sstream>

#include "gpcal/errors.hpp"
#include "gpcal/io/table.hpp"

namespace gpcal {

namespace {

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (n.find(' ') != std::string::npos || n.find(',') != std::string::npos) {
      throw IoError("archive: name '" + n + "' may not contain spaces or commas");
    }
    if (!out.empty()) out += " ";
    out += n;
  }
  return out;
}

std::vector<std::string> split_names(const std::string& joined) {
  std::istringstream in(joined);
  std::vector<std::string> names;
  std::string token;
  while (in >> token) names.push_back(token);
  return names;
}

const std::string& require_meta(const Table& table, const std::string& key,
                                const std::filesystem::path& file) {
  const std::string* value = table.meta_value(key);
  if (!value) {
    throw IoError(file.string() + ": archive metadata is missing '" + key + "'");
  }
  return *value;
}

bool is_reserved_key(const std::string& key) {
  return key == "seed" || key == "config" || key == "scenario" || key == "model" ||
         key == "chains" || key == "theta" || key == "streams";
}

}  // namespace

void write_archive(const std::filesystem::path& file, const PosteriorArchive& archive) {
  archive.validate();
  Table table = make_numeric_table(archive.column_names(), archive.samples);
  table.meta.emplace_back("seed", std::to_string(archive.seed));
  table.meta.emplace_back("config", archive.config_fingerprint);
  table.meta.emplace_back("scenario", scenario_name(archive.scenario));
  table.meta.emplace_back("model", archive.model_name);
  table.meta.emplace_back("chains", std::to_string(archive.chains));
  table.meta.emplace_back("theta", join_names(archive.theta_names));
  table.meta.emplace_back("streams", join_names(archive.stream_names));
  for (const auto& [key, value] : archive.extra_meta) {
    if (is_reserved_key(key)) {
      throw IoError("archive: extra metadata may not use reserved key '" + key + "'");
    }
    table.meta.emplace_back(key, value);
  }
  write_table(file, table);
}

PosteriorArchive read_archive(const std::filesystem::path& file) {
  const Table table = read_table(file);

  PosteriorArchive archive;
  archive.scenario = scenario_from_name(require_meta(table, "scenario", file));
  archive.model_name = require_meta(table, "model", file);
  archive.config_fingerprint = require_meta(table, "config", file);
  archive.theta_names = split_names(require_meta(table, "theta", file));
  archive.stream_names = split_names(require_meta(table, "streams", file));

  const std::string& seed_text = require_meta(table, "seed", file);
  errno = 0;
  char* end = nullptr;
  const unsigned long long seed = std::strtoull(seed_text.c_str(), &end, 10);
  if (seed_text.empty() || end != seed_text.c_str() + seed_text.size() || errno == ERANGE) {
    throw IoError(file.string() + ": cannot parse archive seed '" + seed_text + "'");
  }
  archive.seed = static_cast<std::uint64_t>(seed);

  const std::string& chains_text = require_meta(table, "chains", file);
  archive.chains = std::atoi(chains_text.c_str());
  if (archive.chains < 1) {
    throw IoError(file.string() + ": bad archive chain count '" + chains_text + "'");
  }

  for (const auto& [key, value] : table.meta) {
    if (!is_reserved_key(key)) archive.extra_meta.emplace_back(key, value);
  }

  const std::vector<std::string> expected = archive.column_names();
  if (table.header != expected) {
    throw IoError(file.string() + ": archive columns do not match the metadata");
  }
  archive.samples = numeric_matrix(table);
  archive.validate();
  return archive;
}

}  // namespace gpcal
