#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gpcal/gp/conditional.hpp"
#include "gpcal/gp/support.hpp"
#include "gpcal/infer/priors.hpp"
#include "gpcal/model/forward.hpp"
#include "gpcal/model/stream.hpp"
#include "gpcal/rng.hpp"

namespace gpcal {

// Per-stream hyperparameter state. sigma2_norm is dimensionless; the kernel
// amplitude it implies is sigma2_norm * mean(sigma2_eps) of the stream.
struct StreamGpState {
  double psi = 0.0;
  double sigma2_norm = 0.0;
  SupportSelection support;

  double sigma2_d(const ObservationStream& stream) const {
    return sigma2_norm * stream.mean_sigma2_eps();
  }
};

// sum_i residual_i^2 / sigma2_eps_i, accumulated in index order. Both
// scenario densities route their data terms through this one function so the
// zero-signal-variance reduction is exact.
double gaussian_misfit(const Eigen::VectorXd& residual,
                       const Eigen::VectorXd& sigma2_eps);

// log p(theta | o) for the scenario that ignores model discrepancy:
// -1/2 sum_k sum_i (o_ki - g_ki(theta))^2 / sigma2_eps_ki + log p(theta),
// Gaussian normalizing constants omitted throughout.
double log_density_ignore(const Eigen::VectorXd& theta,
                          const std::vector<ObservationStream>& streams,
                          const ForwardModel& model, const ThetaPrior& prior);

// Data-plus-penalty term of a single stream: the residual is corrected by the
// conditional discrepancy merged back over all records, and the roughness
// penalty -1/2 delta_s' K_ss^{-1} delta_s is added.
double stream_gp_term(const ObservationStream& stream,
                      const Eigen::VectorXd& residual,
                      const SupportSelection& support,
                      const DiscrepancyEstimate<double>& estimate);

// log p(theta | o, psi, sigma2) for the discrepancy-aware scenario. Supports
// are taken as given (fixed within a theta update). A singularity in the
// discrepancy solve is logged and reported as -inf so callers treat the
// point as rejected instead of crashing; the failing stream's outputs are
// left as a zero estimate with a -inf term so caches stay well formed.
// Optional outputs receive the per-stream residuals, estimates and terms.
double log_density_gp(const Eigen::VectorXd& theta,
                      const std::vector<StreamGpState>& hyper,
                      const std::vector<ObservationStream>& streams,
                      const ForwardModel& model, const ThetaPrior& prior,
                      std::vector<DiscrepancyEstimate<double>>* estimates = nullptr,
                      std::vector<double>* stream_terms = nullptr,
                      std::vector<Eigen::VectorXd>* residuals = nullptr);

// Full conditional of the correlation length of one stream, up to a
// constant. A fresh support selection for the candidate psi is drawn
// (written to support_out, consuming rng), the candidate is checked against
// that selection's truncation bounds (-inf outside), and the stream term is
// evaluated at the implied discrepancy. residual is o - g(theta) for the
// stream; sigma2_d its current kernel amplitude. The Jacobian for sampling
// in log space is the caller's business.
double log_conditional_psi(double psi, const ObservationStream& stream,
                           const Eigen::VectorXd& residual, double sigma2_d,
                           const PsiPrior& prior, Rng& rng,
                           SupportSelection& support_out,
                           DiscrepancyEstimate<double>* estimate_out = nullptr,
                           double* term_out = nullptr);

}  // namespace gpcal
