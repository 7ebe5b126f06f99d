#include "gpcal/io/table.hpp"

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

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

}  // namespace

Eigen::Index Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<Eigen::Index>(i);
  }
  throw IoError("table: no column named '" + name + "'");
}

Eigen::VectorXd Table::numeric_column(const std::string& name) const {
  const auto c = static_cast<std::size_t>(column(name));
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out(static_cast<Eigen::Index>(r)) =
        parse_double_strict(rows[r][c], "column '" + name + "' row " + std::to_string(r + 1));
  }
  return out;
}

const std::string* Table::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string format_g17(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

double parse_double_strict(const std::string& text, const std::string& context) {
  if (text.empty()) throw IoError("empty numeric field at " + context);
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    throw IoError("cannot parse '" + text + "' as a number at " + context);
  }
  // ERANGE with a saturated result is overflow; ERANGE on underflow still
  // yields the nearest denormal (or zero), which must round-trip.
  if (errno == ERANGE && (value == HUGE_VAL || value == -HUGE_VAL)) {
    throw IoError("number out of range: '" + text + "' at " + context);
  }
  return value;
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");

  Table table;
  std::string line;
  long line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped.front() == '#') {
      if (header_seen) {
        throw IoError(path.string() + ":" + std::to_string(line_no) +
                      ": comment lines belong before the header");
      }
      const std::string body = trim(stripped.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        throw IoError(path.string() + ":" + std::to_string(line_no) +
                      ": comment line is not 'key = value'");
      }
      table.meta.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
      continue;
    }
    if (!header_seen) {
      table.header = split_csv(stripped);
      header_seen = true;
      continue;
    }
    auto fields = split_csv(stripped);
    if (fields.size() != table.header.size()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(table.header.size()) + " fields, found " +
                    std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!header_seen) {
    throw IoError(path.string() + ": no header line found");
  }
  return table;
}

void write_table(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& [key, value] : table.meta) {
    out << "# " << key << " = " << value << "\n";
  }
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) out << ",";
    out << table.header[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw IoError("table: row width does not match the header while writing " +
                    path.string());
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ",";
      out << row[i];
    }
    out << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

Table make_numeric_table(const std::vector<std::string>& header,
                         const Eigen::MatrixXd& values) {
  if (static_cast<Eigen::Index>(header.size()) != values.cols()) {
    throw IoError("table: header width does not match the value matrix");
  }
  Table table;
  table.header = header;
  table.rows.reserve(static_cast<std::size_t>(values.rows()));
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    std::vector<std::string> row;
    row.reserve(static_cast<std::size_t>(values.cols()));
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      row.push_back(format_g17(values(r, c)));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Eigen::MatrixXd numeric_matrix(const Table& table) {
  Eigen::MatrixXd values(static_cast<Eigen::Index>(table.rows.size()),
                         static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_double_strict(table.rows[r][c], "row " + std::to_string(r + 1) +
                                                    " column " + std::to_string(c + 1));
    }
  }
  return values;
}

}  // namespace gpcal
