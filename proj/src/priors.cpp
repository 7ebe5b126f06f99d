#include "gpcal/infer/priors.hpp"

#include <cmath>
#include <limits>

#include "gpcal/errors.hpp"

namespace gpcal {

PsiPrior psi_prior_from_range(double range) {
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw ConfigError("psi prior: location range must be positive and finite");
  }
  // mean r/3, variance r^2/3.2
  return PsiPrior{3.2 / 9.0, 3.2 / (3.0 * range)};
}

double log_gamma_unnormalized(double x, const PsiPrior& prior) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  return (prior.shape - 1.0) * std::log(x) - prior.rate * x;
}

double Sigma2Prior::mean() const {
  if (!(shape > 1.0)) throw ConfigError("sigma2 prior: mean needs shape > 1");
  return scale / (shape - 1.0);
}

double Sigma2Prior::variance() const {
  if (!(shape > 2.0)) throw ConfigError("sigma2 prior: variance needs shape > 2");
  return scale * scale / ((shape - 1.0) * (shape - 1.0) * (shape - 2.0));
}

bool ThetaPrior::inside(const Eigen::VectorXd& theta) const {
  if (theta.size() != lower.size() || theta.size() != upper.size()) {
    throw ConfigError("theta prior: dimension mismatch");
  }
  return ((theta.array() >= lower.array()) && (theta.array() <= upper.array())).all();
}

double ThetaPrior::logp(const Eigen::VectorXd& theta) const {
  return inside(theta) ? 0.0 : -std::numeric_limits<double>::infinity();
}

void ThetaPrior::validate(Eigen::Index dim) const {
  if (lower.size() != dim || upper.size() != dim) {
    throw ConfigError("theta prior: bounds do not match parameter dimension");
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (!std::isfinite(lower(i)) || !std::isfinite(upper(i)) || !(lower(i) < upper(i))) {
      throw ConfigError("theta prior: bounds must be finite with lower < upper");
    }
  }
}

}  // namespace gpcal
