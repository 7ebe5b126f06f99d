#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gpcal/infer/sampler.hpp"

namespace gpcal {

// Potential scale reduction factor for one scalar parameter given per-chain
// sample vectors: sqrt(((n-1)/n W + B_n) / W) with W the mean within-chain
// variance and B_n the between-chain variance of chain means, clamped to
// >= 1. W = 0 gives 1 when the chains agree exactly and +inf otherwise.
// Requires >= 2 chains with >= 10 samples each, all of equal length.
double psrf(const std::vector<Eigen::VectorXd>& chains);

struct PsrfReport {
  std::vector<std::string> names;
  Eigen::VectorXd values;
};

// PSRF for every archive parameter column (theta components and, in the gp
// scenario, per-stream psi and sigma2).
PsrfReport gelman_rubin(const PosteriorArchive& archive);

}  // namespace gpcal
