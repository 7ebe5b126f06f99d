#include "gpcal/opt/objective.hpp"

#include <algorithm>
#include <limits>

#include "gpcal/errors.hpp"
#include "gpcal/gp/conditional.hpp"
#include "gpcal/infer/density.hpp"

namespace gpcal {

double objective_ignore(const Eigen::VectorXd& theta,
                        const std::vector<ObservationStream>& streams,
                        const ForwardModel& model, const ThetaPrior& prior) {
  return -log_density_ignore(theta, streams, model, prior);
}

FixedGpConfig fixed_gp_config(const std::vector<ObservationStream>& streams,
                              SignalVarianceRule rule) {
  FixedGpConfig config;
  config.streams.reserve(streams.size());
  for (const auto& stream : streams) {
    stream.validate();
    const Eigen::Index n = stream.n();
    const double lo = stream.locations(0);
    const double hi = stream.locations(n - 1);
    const double range = hi - lo;

    FixedGpStream fixed;
    std::vector<Eigen::Index> support;
    if (n <= 4) {
      support.resize(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) support[static_cast<std::size_t>(i)] = i;
    } else {
      const std::vector<double> nodes{lo, lo + range / 3.0, lo + 2.0 * range / 3.0, hi};
      support = detail::map_nodes(stream.locations, nodes, 1);
    }
    fixed.support.support_indices = std::move(support);
    fixed.support.remaining_indices.clear();
    std::size_t s = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (s < fixed.support.support_indices.size() &&
          fixed.support.support_indices[s] == i) {
        ++s;
      } else {
        fixed.support.remaining_indices.push_back(i);
      }
    }

    fixed.kernel.psi = range > 0.0 ? range / 3.0 : 1.0;
    const double mean_eps = stream.mean_sigma2_eps();
    fixed.kernel.sigma2_d = rule == SignalVarianceRule::sd_multiplier
                                ? 2.25 * mean_eps
                                : 1.5 * mean_eps;
    config.streams.push_back(std::move(fixed));
  }
  return config;
}

double objective_gp_fixed(const Eigen::VectorXd& theta,
                          const std::vector<ObservationStream>& streams,
                          const ForwardModel& model, const ThetaPrior& prior,
                          const FixedGpConfig& config) {
  if (config.streams.size() != streams.size()) {
    throw ConfigError("objective_gp_fixed: one fixed configuration per stream required");
  }
  double logp = prior.logp(theta);
  if (logp == -std::numeric_limits<double>::infinity()) {
    return std::numeric_limits<double>::infinity();
  }
  for (std::size_t k = 0; k < streams.size(); ++k) {
    const auto& stream = streams[k];
    const auto& fixed = config.streams[k];
    const Eigen::VectorXd residual = stream.observations - model.predict(theta, stream);
    const Eigen::VectorXd residual_s = slice(residual, fixed.support.support_indices);
    const DiscrepancyEstimate<double> estimate = conditional_discrepancy(
        residual_s, stream.locations, fixed.support, fixed.kernel,
        stream.mean_sigma2_eps());
    logp += stream_gp_term(stream, residual, fixed.support, estimate);
  }
  return -logp;
}

}  // namespace gpcal
