#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gpcal/model/stream.hpp"

namespace gpcal {

// Deterministic forward model. Identical theta must yield bitwise identical
// predictions; prediction length matches the stream's record count.
class ForwardModel {
 public:
  virtual ~ForwardModel() = default;

  virtual std::string name() const = 0;
  virtual Eigen::Index theta_dim() const = 0;
  virtual std::vector<std::string> theta_names() const = 0;

  // Natural flat-prior box; entries may be infinite. Configuration may narrow
  // the box but the sampler needs a finite one for initialization.
  virtual Eigen::VectorXd theta_lower() const = 0;
  virtual Eigen::VectorXd theta_upper() const = 0;

  virtual std::vector<std::string> stream_names() const = 0;

  virtual Eigen::VectorXd predict(const Eigen::VectorXd& theta,
                                  const ObservationStream& stream) const = 0;
};

}  // namespace gpcal
