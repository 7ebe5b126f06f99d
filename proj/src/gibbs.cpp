#include "gpcal/infer/gibbs.hpp"

#include <cmath>
#include <random>

#include "gpcal/errors.hpp"
#include "gpcal/gp/conditional.hpp"

namespace gpcal {

double gibbs_sigma2(const Eigen::VectorXd& delta_s,
                    const Eigen::MatrixXd& lambda_ss, double sigma2_eps_mean,
                    const Sigma2Prior& prior, Rng& rng) {
  if (lambda_ss.rows() != lambda_ss.cols() || lambda_ss.rows() != delta_s.size()) {
    throw ConfigError("gibbs_sigma2: discrepancy and correlation matrix sizes disagree");
  }
  if (!(sigma2_eps_mean > 0.0) || !std::isfinite(sigma2_eps_mean)) {
    throw ConfigError("gibbs_sigma2: observation error variance must be positive");
  }
  if (!(prior.shape > 0.0) || !(prior.scale > 0.0)) {
    throw ConfigError("gibbs_sigma2: prior shape and scale must be positive");
  }

  double quad = 0.0;
  if (delta_s.size() > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt;
    if (!llt_with_jitter(llt, lambda_ss, 1.0)) {
      throw NumericalError("gibbs_sigma2: correlation matrix at supports is singular");
    }
    quad = delta_s.dot(llt.solve(delta_s));
    if (quad < 0.0) quad = 0.0;
  }

  const double shape_post = prior.shape + 0.5 * static_cast<double>(delta_s.size());
  const double scale_post = prior.scale + quad / (2.0 * sigma2_eps_mean);
  // inverse-gamma via the reciprocal of a gamma(shape, 1/scale_post) draw
  std::gamma_distribution<double> gamma(shape_post, 1.0 / scale_post);
  return 1.0 / gamma(rng);
}

}  // namespace gpcal
