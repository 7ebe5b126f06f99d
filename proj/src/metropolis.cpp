#include "gpcal/infer/metropolis.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace gpcal {

bool metropolis_accept(double logp_current, double logp_proposed, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  if (std::isnan(logp_proposed)) return false;
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (logp_proposed == -inf) return false;
  if (logp_current == -inf) return true;
  // exp(delta) >= 1 > u whenever delta >= 0, so ties accept
  return u < std::exp(logp_proposed - logp_current);
}

}  // namespace gpcal
