#include "gpcal/io/dataset.hpp"

#include "gpcal/errors.hpp"
#include "gpcal/io/table.hpp"

namespace gpcal {

void write_stream(const std::filesystem::path& dir, const ObservationStream& stream) {
  if (stream.name.empty()) throw IoError("write_stream: stream has no name");
  Eigen::MatrixXd values(stream.n(), 3);
  values.col(0) = stream.locations;
  values.col(1) = stream.observations;
  values.col(2) = stream.sigma2_eps;
  const Table table = make_numeric_table({"location", "observation", "sigma2_eps"}, values);
  write_table(dir / (stream.name + ".csv"), table);
}

ObservationStream read_stream(const std::filesystem::path& dir,
                              const std::string& name) {
  const Table table = read_table(dir / (name + ".csv"));
  ObservationStream stream;
  stream.name = name;
  stream.locations = table.numeric_column("location");
  stream.observations = table.numeric_column("observation");
  stream.sigma2_eps = table.numeric_column("sigma2_eps");
  stream.validate();
  return stream;
}

std::vector<ObservationStream> read_streams(const std::filesystem::path& dir,
                                            const std::vector<std::string>& names) {
  std::vector<ObservationStream> streams;
  streams.reserve(names.size());
  for (const auto& name : names) streams.push_back(read_stream(dir, name));
  return streams;
}

void write_scalars(const std::filesystem::path& file,
                   const std::vector<std::pair<std::string, double>>& values) {
  Table table;
  table.header = {"name", "value"};
  for (const auto& [name, value] : values) {
    table.rows.push_back({name, format_g17(value)});
  }
  write_table(file, table);
}

std::map<std::string, double> read_scalars(const std::filesystem::path& file) {
  const Table table = read_table(file);
  const auto name_col = static_cast<std::size_t>(table.column("name"));
  const auto value_col = static_cast<std::size_t>(table.column("value"));
  std::map<std::string, double> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string& name = table.rows[r][name_col];
    if (out.count(name)) {
      throw IoError(file.string() + ": duplicate scalar '" + name + "'");
    }
    out[name] = parse_double_strict(table.rows[r][value_col],
                                    file.string() + " row " + std::to_string(r + 1));
  }
  return out;
}

double require_scalar(const std::map<std::string, double>& scalars,
                      const std::string& name, const std::string& origin) {
  const auto it = scalars.find(name);
  if (it == scalars.end()) {
    throw IoError(origin + ": missing scalar '" + name + "'");
  }
  return it->second;
}

void write_truth_curve(const std::filesystem::path& dir, const std::string& stream,
                       const Eigen::VectorXd& locations, const Eigen::VectorXd& o_star) {
  if (locations.size() != o_star.size()) {
    throw IoError("write_truth_curve: location and value lengths disagree");
  }
  Eigen::MatrixXd values(locations.size(), 2);
  values.col(0) = locations;
  values.col(1) = o_star;
  write_table(dir / ("truth_" + stream + ".csv"),
              make_numeric_table({"location", "o_star"}, values));
}

}  // namespace gpcal
