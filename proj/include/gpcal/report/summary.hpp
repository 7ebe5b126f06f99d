#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "gpcal/infer/sampler.hpp"

namespace gpcal {

// Per-parameter posterior summary over all retained draws. Columns of stats:
// mean, sd, 2.5%, 50%, 97.5%, PSRF. PSRF is NaN when the archive cannot
// support the diagnostic (single chain or too few samples).
struct ParameterSummary {
  std::vector<std::string> names;
  Eigen::MatrixXd stats;

  static const std::vector<std::string>& stat_names();
};

ParameterSummary parameter_summary(const PosteriorArchive& archive);

// Posterior quantiles (2.5/50/97.5%) of each stream's normalized signal
// variance, of its log, and of the pairwise variance ratios between streams.
// Only defined for gp archives.
struct DiscrepancySummary {
  std::vector<std::string> streams;
  Eigen::MatrixXd sigma2_quantiles;     // one row per stream
  Eigen::MatrixXd log_sigma2_quantiles; // natural log
  std::vector<std::pair<std::string, std::string>> ratio_pairs;  // numerator, denominator
  Eigen::MatrixXd ratio_quantiles;      // one row per pair
};

DiscrepancySummary discrepancy_summary(const PosteriorArchive& archive);

}  // namespace gpcal
