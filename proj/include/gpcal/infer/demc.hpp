#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "gpcal/rng.hpp"

namespace gpcal {

// Differential-evolution proposal: current + gamma * (x_a - x_b) + e with
// distinct partners a, b drawn uniformly from the population (both != self)
// and e_i ~ N(0, jitter_sd_i^2). The jitter normals are drawn even when the
// sd is zero so the rng stream does not depend on the jitter scale.
Eigen::VectorXd demc_propose(const Eigen::VectorXd& current,
                             const std::vector<Eigen::VectorXd>& population,
                             std::size_t self, double gamma,
                             const Eigen::VectorXd& jitter_sd, Rng& rng);

// Step scale: 2.38/sqrt(2 d) with probability 0.9, otherwise 1.0 so that
// full swap moves between modes stay possible.
double demc_gamma(Eigen::Index dim, Rng& rng);

}  // namespace gpcal
