#include "gpcal/infer/demc.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gpcal/errors.hpp"

namespace gpcal {

Eigen::VectorXd demc_propose(const Eigen::VectorXd& current,
                             const std::vector<Eigen::VectorXd>& population,
                             std::size_t self, double gamma,
                             const Eigen::VectorXd& jitter_sd, Rng& rng) {
  const std::size_t m = population.size();
  if (m < 3) throw ConfigError("demc_propose: population must hold at least 3 chains");
  if (self >= m) throw ConfigError("demc_propose: chain index outside population");
  if (jitter_sd.size() != current.size()) {
    throw ConfigError("demc_propose: jitter dimension mismatch");
  }

  // a uniform over population \ {self}; b uniform over population \ {self, a}
  std::uniform_int_distribution<std::size_t> pick_a(0, m - 2);
  std::size_t a = pick_a(rng);
  if (a >= self) ++a;
  std::uniform_int_distribution<std::size_t> pick_b(0, m - 3);
  std::size_t b = pick_b(rng);
  const std::size_t lo = std::min(self, a);
  const std::size_t hi = std::max(self, a);
  if (b >= lo) ++b;
  if (b >= hi) ++b;

  if (population[a].size() != current.size() || population[b].size() != current.size()) {
    throw ConfigError("demc_propose: population member dimension mismatch");
  }

  Eigen::VectorXd proposal = current + gamma * (population[a] - population[b]);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (Eigen::Index i = 0; i < proposal.size(); ++i) {
    proposal(i) += jitter_sd(i) * n01(rng);
  }
  return proposal;
}

double demc_gamma(Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw ConfigError("demc_gamma: dimension must be positive");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return unif(rng) < 0.9 ? 2.38 / std::sqrt(2.0 * static_cast<double>(dim)) : 1.0;
}

}  // namespace gpcal
