#include "gpcal/report/summary.hpp"

#include <cmath>
#include <limits>

#include "gpcal/errors.hpp"
#include "gpcal/infer/diagnostics.hpp"
#include "gpcal/report/quantiles.hpp"

namespace gpcal {

namespace {
const std::vector<double> kBandProbs{0.025, 0.5, 0.975};
}

const std::vector<std::string>& ParameterSummary::stat_names() {
  static const std::vector<std::string> names{"mean", "sd", "q025", "q500", "q975", "psrf"};
  return names;
}

ParameterSummary parameter_summary(const PosteriorArchive& archive) {
  archive.validate();
  if (archive.n_rows() == 0) {
    throw ConfigError("parameter_summary: archive holds no retained samples");
  }

  std::vector<Eigen::Index> columns;
  std::vector<std::string> names;
  for (Eigen::Index i = 0; i < archive.theta_dim(); ++i) {
    columns.push_back(archive.theta_column(i));
    names.push_back(archive.theta_names[static_cast<std::size_t>(i)]);
  }
  if (archive.scenario == Scenario::gp) {
    for (Eigen::Index k = 0; k < archive.n_streams(); ++k) {
      columns.push_back(archive.psi_column(k));
      names.push_back("psi_" + archive.stream_names[static_cast<std::size_t>(k)]);
      columns.push_back(archive.sigma2_column(k));
      names.push_back("sigma2_" + archive.stream_names[static_cast<std::size_t>(k)]);
    }
  }

  Eigen::VectorXd psrf_values =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(columns.size()),
                                std::numeric_limits<double>::quiet_NaN());
  try {
    const PsrfReport psrf = gelman_rubin(archive);
    if (psrf.values.size() == psrf_values.size()) psrf_values = psrf.values;
  } catch (const ConfigError&) {
    // diagnostic unavailable for this archive shape; NaN columns say so
  }

  ParameterSummary summary;
  summary.names = names;
  summary.stats.resize(static_cast<Eigen::Index>(columns.size()), 6);
  const double n = static_cast<double>(archive.n_rows());
  for (std::size_t p = 0; p < columns.size(); ++p) {
    const Eigen::VectorXd v = archive.samples.col(columns[p]);
    const double mean = v.mean();
    double sd = 0.0;
    if (archive.n_rows() > 1) {
      sd = std::sqrt((v.array() - mean).square().sum() / (n - 1.0));
    }
    const Eigen::VectorXd q = quantiles_type7(v, kBandProbs);
    const auto row = static_cast<Eigen::Index>(p);
    summary.stats(row, 0) = mean;
    summary.stats(row, 1) = sd;
    summary.stats(row, 2) = q(0);
    summary.stats(row, 3) = q(1);
    summary.stats(row, 4) = q(2);
    summary.stats(row, 5) = psrf_values(row);
  }
  return summary;
}

DiscrepancySummary discrepancy_summary(const PosteriorArchive& archive) {
  archive.validate();
  if (archive.scenario != Scenario::gp) {
    throw ConfigError(
        "discrepancy_summary: archive was sampled without a discrepancy model");
  }
  if (archive.n_rows() == 0) {
    throw ConfigError("discrepancy_summary: archive holds no retained samples");
  }

  const Eigen::Index n_streams = archive.n_streams();
  DiscrepancySummary summary;
  summary.streams = archive.stream_names;
  summary.sigma2_quantiles.resize(n_streams, 3);
  summary.log_sigma2_quantiles.resize(n_streams, 3);
  for (Eigen::Index k = 0; k < n_streams; ++k) {
    const Eigen::VectorXd v = archive.samples.col(archive.sigma2_column(k));
    summary.sigma2_quantiles.row(k) = quantiles_type7(v, kBandProbs).transpose();
    summary.log_sigma2_quantiles.row(k) =
        quantiles_type7(v.array().log().matrix(), kBandProbs).transpose();
  }

  for (Eigen::Index k1 = 0; k1 < n_streams; ++k1) {
    for (Eigen::Index k2 = 0; k2 < n_streams; ++k2) {
      if (k1 == k2) continue;
      summary.ratio_pairs.emplace_back(
          archive.stream_names[static_cast<std::size_t>(k1)],
          archive.stream_names[static_cast<std::size_t>(k2)]);
    }
  }
  summary.ratio_quantiles.resize(static_cast<Eigen::Index>(summary.ratio_pairs.size()), 3);
  Eigen::Index pair_row = 0;
  for (Eigen::Index k1 = 0; k1 < n_streams; ++k1) {
    for (Eigen::Index k2 = 0; k2 < n_streams; ++k2) {
      if (k1 == k2) continue;
      const Eigen::VectorXd ratio =
          archive.samples.col(archive.sigma2_column(k1)).array() /
          archive.samples.col(archive.sigma2_column(k2)).array();
      summary.ratio_quantiles.row(pair_row++) =
          quantiles_type7(ratio, kBandProbs).transpose();
    }
  }
  return summary;
}

}  // namespace gpcal
