#include "gpcal/report/predictive.hpp"

#include <utility>

#include "gpcal/errors.hpp"
#include "gpcal/gp/conditional.hpp"
#include "gpcal/gp/kernel.hpp"
#include "gpcal/gp/support.hpp"
#include "gpcal/report/quantiles.hpp"

namespace gpcal {

std::vector<StreamBand> predictive_bands(
    const PosteriorArchive& archive, const ForwardModel& model,
    const std::vector<ObservationStream>& streams, Rng& rng,
    const std::vector<double>& probabilities) {
  archive.validate();
  if (archive.n_rows() == 0) {
    throw ConfigError("predictive_bands: archive holds no retained samples");
  }
  if (streams.size() != archive.stream_names.size()) {
    throw ConfigError("predictive_bands: stream count does not match the archive");
  }
  for (std::size_t k = 0; k < streams.size(); ++k) {
    if (streams[k].name != archive.stream_names[k]) {
      throw ConfigError("predictive_bands: stream '" + streams[k].name +
                        "' does not match archive stream '" +
                        archive.stream_names[k] + "'");
    }
    streams[k].validate();
  }
  if (model.theta_dim() != archive.theta_dim()) {
    throw ConfigError("predictive_bands: model dimension does not match the archive");
  }
  if (probabilities.empty()) {
    throw ConfigError("predictive_bands: at least one probability required");
  }

  const Eigen::Index rows = archive.n_rows();
  const bool gp = archive.scenario == Scenario::gp;
  const auto n_probs = static_cast<Eigen::Index>(probabilities.size());

  std::vector<StreamBand> bands;
  bands.reserve(streams.size());
  for (std::size_t k = 0; k < streams.size(); ++k) {
    const auto& stream = streams[k];
    const Eigen::Index n = stream.n();
    Eigen::MatrixXd model_draws(rows, n);
    Eigen::MatrixXd process_draws;
    if (gp) process_draws.resize(rows, n);

    Eigen::VectorXd theta(archive.theta_dim());
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index i = 0; i < archive.theta_dim(); ++i) {
        theta(i) = archive.samples(r, archive.theta_column(i));
      }
      const Eigen::VectorXd g = model.predict(theta, stream);
      model_draws.row(r) = g.transpose();
      if (gp) {
        const auto idx = static_cast<Eigen::Index>(k);
        const double psi = archive.samples(r, archive.psi_column(idx));
        const double sigma2_norm = archive.samples(r, archive.sigma2_column(idx));
        const double sigma2_d = sigma2_norm * stream.mean_sigma2_eps();
        const KernelParams<double> params{psi, sigma2_d};
        const SupportSelection selection =
            select_supporting_points(stream.locations, psi, rng);
        const Eigen::VectorXd residual = stream.observations - g;
        const Eigen::VectorXd residual_s = slice(residual, selection.support_indices);
        const DiscrepancyEstimate<double> estimate = conditional_discrepancy(
            residual_s, stream.locations, selection, params, stream.mean_sigma2_eps());
        const Eigen::VectorXd draw = gp_conditional_draw(
            estimate, stream.locations, selection, params, stream.mean_sigma2_eps(), rng);
        process_draws.row(r) = (g + draw).transpose();
      }
    }

    StreamBand band;
    band.stream = stream.name;
    band.locations = stream.locations;
    band.model_band.resize(n, n_probs);
    if (gp) band.process_band.resize(n, n_probs);
    for (Eigen::Index i = 0; i < n; ++i) {
      band.model_band.row(i) =
          quantiles_type7(model_draws.col(i), probabilities).transpose();
      if (gp) {
        band.process_band.row(i) =
            quantiles_type7(process_draws.col(i), probabilities).transpose();
      }
    }
    bands.push_back(std::move(band));
  }
  return bands;
}

}  // namespace gpcal
