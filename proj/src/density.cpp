#include "gpcal/infer/density.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "gpcal/errors.hpp"
#include "gpcal/log.hpp"

namespace gpcal {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double gaussian_misfit(const Eigen::VectorXd& residual,
                       const Eigen::VectorXd& sigma2_eps) {
  if (residual.size() != sigma2_eps.size()) {
    throw ConfigError("gaussian_misfit: residual and variance lengths disagree");
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    acc += residual(i) * residual(i) / sigma2_eps(i);
  }
  return acc;
}

double log_density_ignore(const Eigen::VectorXd& theta,
                          const std::vector<ObservationStream>& streams,
                          const ForwardModel& model, const ThetaPrior& prior) {
  double logp = prior.logp(theta);
  if (logp == kNegInf) return kNegInf;
  for (const auto& stream : streams) {
    const Eigen::VectorXd residual = stream.observations - model.predict(theta, stream);
    logp += -0.5 * gaussian_misfit(residual, stream.sigma2_eps);
  }
  return logp;
}

double stream_gp_term(const ObservationStream& stream,
                      const Eigen::VectorXd& residual,
                      const SupportSelection& support,
                      const DiscrepancyEstimate<double>& estimate) {
  const Eigen::VectorXd delta =
      merge_by_selection(support, estimate.delta_s, estimate.delta_r);
  const Eigen::VectorXd corrected = residual - delta;
  return -0.5 * gaussian_misfit(corrected, stream.sigma2_eps) -
         0.5 * estimate.penalty_quadform;
}

double log_density_gp(const Eigen::VectorXd& theta,
                      const std::vector<StreamGpState>& hyper,
                      const std::vector<ObservationStream>& streams,
                      const ForwardModel& model, const ThetaPrior& prior,
                      std::vector<DiscrepancyEstimate<double>>* estimates,
                      std::vector<double>* stream_terms,
                      std::vector<Eigen::VectorXd>* residuals) {
  if (hyper.size() != streams.size()) {
    throw ConfigError("log_density_gp: one hyperparameter state per stream required");
  }
  double logp = prior.logp(theta);
  if (logp == kNegInf) return kNegInf;
  if (estimates) estimates->resize(streams.size());
  if (stream_terms) stream_terms->resize(streams.size());
  if (residuals) residuals->resize(streams.size());
  for (std::size_t k = 0; k < streams.size(); ++k) {
    const auto& stream = streams[k];
    const auto& state = hyper[k];
    Eigen::VectorXd residual = stream.observations - model.predict(theta, stream);
    const Eigen::VectorXd residual_s = slice(residual, state.support.support_indices);
    DiscrepancyEstimate<double> estimate;
    double term;
    try {
      estimate = conditional_discrepancy(
          residual_s, stream.locations, state.support,
          KernelParams<double>{state.psi, state.sigma2_d(stream)},
          stream.mean_sigma2_eps());
      term = stream_gp_term(stream, residual, state.support, estimate);
    } catch (const NumericalError& err) {
      log::warn(std::string("discrepancy solve failed, point rejected: ") + err.what());
      estimate.delta_s = Eigen::VectorXd::Zero(residual_s.size());
      estimate.delta_r = Eigen::VectorXd::Zero(residual.size() - residual_s.size());
      estimate.penalty_quadform = 0.0;
      term = kNegInf;
    }
    if (estimates) (*estimates)[k] = std::move(estimate);
    if (stream_terms) (*stream_terms)[k] = term;
    if (residuals) (*residuals)[k] = std::move(residual);
    logp += term;
  }
  return logp;
}

double log_conditional_psi(double psi, const ObservationStream& stream,
                           const Eigen::VectorXd& residual, double sigma2_d,
                           const PsiPrior& prior, Rng& rng,
                           SupportSelection& support_out,
                           DiscrepancyEstimate<double>* estimate_out,
                           double* term_out) {
  if (!(psi > 0.0) || !std::isfinite(psi)) return kNegInf;
  support_out = select_supporting_points(stream.locations, psi, rng);
  if (stream.n() >= 2) {
    const PsiBounds bounds = psi_truncation_bounds(stream.locations, support_out);
    if (psi < bounds.lower || psi > bounds.upper) return kNegInf;
  }
  const Eigen::VectorXd residual_s = slice(residual, support_out.support_indices);
  DiscrepancyEstimate<double> estimate;
  try {
    estimate = conditional_discrepancy(residual_s, stream.locations, support_out,
                                       KernelParams<double>{psi, sigma2_d},
                                       stream.mean_sigma2_eps());
  } catch (const NumericalError& err) {
    log::warn(std::string("discrepancy solve failed, psi rejected: ") + err.what());
    return kNegInf;
  }
  const double term = stream_gp_term(stream, residual, support_out, estimate);
  if (estimate_out) *estimate_out = std::move(estimate);
  if (term_out) *term_out = term;
  return term + log_gamma_unnormalized(psi, prior);
}

}  // namespace gpcal
