#pragma once

#include <Eigen/Dense>
#include <string>

#include "gpcal/errors.hpp"

namespace gpcal {

// One data stream: covariate locations (sorted ascending after ingestion),
// observed values, and per-record observation-error variances.
struct ObservationStream {
  std::string name;
  Eigen::VectorXd locations;
  Eigen::VectorXd observations;
  Eigen::VectorXd sigma2_eps;

  Eigen::Index n() const { return observations.size(); }

  double mean_sigma2_eps() const {
    if (sigma2_eps.size() == 0)
      throw ConfigError("stream '" + name + "': empty sigma2_eps");
    return sigma2_eps.mean();
  }

  double range() const { return locations(locations.size() - 1) - locations(0); }

  void validate() const {
    if (locations.size() < 1)
      throw ConfigError("stream '" + name + "': needs at least one record");
    if (observations.size() != locations.size() ||
        sigma2_eps.size() != locations.size())
      throw ConfigError("stream '" + name + "': column lengths differ");
    if (!locations.allFinite() || !observations.allFinite() ||
        !sigma2_eps.allFinite())
      throw ConfigError("stream '" + name + "': non-finite values");
    for (Eigen::Index i = 1; i < locations.size(); ++i)
      if (locations(i) < locations(i - 1))
        throw ConfigError("stream '" + name +
                          "': locations must be sorted ascending");
    if ((sigma2_eps.array() <= 0.0).any())
      throw ConfigError("stream '" + name + "': sigma2_eps must be positive");
  }
};

}  // namespace gpcal
