#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace gpcal {

// Columnar text file: optional "# key = value" comment lines, then one
// header line of comma-separated column names, then data rows. Numbers are
// written with 17 significant digits so a read-back is bit identical.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  Eigen::Index column(const std::string& name) const;  // throws when absent
  Eigen::VectorXd numeric_column(const std::string& name) const;
  const std::string* meta_value(const std::string& key) const;  // null when absent
};

std::string format_g17(double x);
double parse_double_strict(const std::string& text, const std::string& context);

Table read_table(const std::filesystem::path& path);
void write_table(const std::filesystem::path& path, const Table& table);

Table make_numeric_table(const std::vector<std::string>& header,
                         const Eigen::MatrixXd& values);
Eigen::MatrixXd numeric_matrix(const Table& table);

}  // namespace gpcal
