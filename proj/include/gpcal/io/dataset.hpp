#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gpcal/model/stream.hpp"

namespace gpcal {

// One file per stream, "<name>.csv" with columns location, observation,
// sigma2_eps. Noise-free truth goes next to it as "truth_<name>.csv"
// (location, o_star) plus a scalar table "truth.csv" (name, value).

void write_stream(const std::filesystem::path& dir, const ObservationStream& stream);
ObservationStream read_stream(const std::filesystem::path& dir,
                              const std::string& name);
std::vector<ObservationStream> read_streams(const std::filesystem::path& dir,
                                            const std::vector<std::string>& names);

void write_scalars(const std::filesystem::path& file,
                   const std::vector<std::pair<std::string, double>>& values);
std::map<std::string, double> read_scalars(const std::filesystem::path& file);
double require_scalar(const std::map<std::string, double>& scalars,
                      const std::string& name, const std::string& origin);

void write_truth_curve(const std::filesystem::path& dir, const std::string& stream,
                       const Eigen::VectorXd& locations, const Eigen::VectorXd& o_star);

}  // namespace gpcal
