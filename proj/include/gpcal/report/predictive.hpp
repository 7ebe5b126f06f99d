#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gpcal/infer/sampler.hpp"
#include "gpcal/model/forward.hpp"
#include "gpcal/model/stream.hpp"
#include "gpcal/rng.hpp"

namespace gpcal {

// Pointwise posterior bands at a stream's observation locations. model_band
// holds quantiles of g(theta) over the retained draws; process_band adds one
// conditional discrepancy draw per sample (empty for ignore archives). Each
// band has one column per requested probability, in the given order.
struct StreamBand {
  std::string stream;
  Eigen::VectorXd locations;
  Eigen::MatrixXd model_band;
  Eigen::MatrixXd process_band;
};

// Walks the archive rows once per stream; for gp archives every row draws a
// fresh support selection for its psi and one conditional realization, so
// the bands integrate over the selection randomness. Throws on an empty
// archive or when streams do not match the archive metadata.
std::vector<StreamBand> predictive_bands(
    const PosteriorArchive& archive, const ForwardModel& model,
    const std::vector<ObservationStream>& streams, Rng& rng,
    const std::vector<double>& probabilities = {0.025, 0.5, 0.975});

}  // namespace gpcal
