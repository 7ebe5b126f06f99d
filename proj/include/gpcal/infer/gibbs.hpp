#pragma once

#include <Eigen/Dense>

#include "gpcal/infer/priors.hpp"
#include "gpcal/rng.hpp"

namespace gpcal {

// One exact draw of the normalized signal variance from its conjugate
// conditional given the current discrepancy at the supporting points:
//   IG(shape + n_s/2, scale + q / (2 mean(sigma2_eps)))
// with q = delta_s' Lambda_ss^{-1} delta_s and Lambda_ss the unit-variance
// kernel matrix at the supporting locations. An empty support falls back to
// a draw from the prior.
double gibbs_sigma2(const Eigen::VectorXd& delta_s,
                    const Eigen::MatrixXd& lambda_ss, double sigma2_eps_mean,
                    const Sigma2Prior& prior, Rng& rng);

}  // namespace gpcal
