#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gpcal {

// Type-7 sample quantile (linear interpolation of order statistics at
// h = (n-1) p). Throws on an empty sample or p outside [0, 1].
double quantile_type7(std::vector<double> values, double p);

// Quantiles of one sample at several probabilities; sorts once.
Eigen::VectorXd quantiles_type7(const Eigen::VectorXd& values,
                                const std::vector<double>& probabilities);

}  // namespace gpcal
