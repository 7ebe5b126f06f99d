#include "gpcal/infer/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "gpcal/errors.hpp"

namespace gpcal {

double psrf(const std::vector<Eigen::VectorXd>& chains) {
  const std::size_t m = chains.size();
  if (m < 2) throw ConfigError("psrf: at least 2 chains required");
  const Eigen::Index n = chains.front().size();
  if (n < 10) throw ConfigError("psrf: at least 10 samples per chain required");
  for (const auto& c : chains) {
    if (c.size() != n) throw ConfigError("psrf: chains must have equal length");
  }

  Eigen::VectorXd means(static_cast<Eigen::Index>(m));
  double within = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double mean = chains[j].mean();
    means(static_cast<Eigen::Index>(j)) = mean;
    within += (chains[j].array() - mean).square().sum() / static_cast<double>(n - 1);
  }
  within /= static_cast<double>(m);
  const double grand = means.mean();
  // between-chain variance of the chain means (not scaled by n)
  const double between_n =
      (means.array() - grand).square().sum() / static_cast<double>(m - 1);

  if (within == 0.0) {
    return between_n == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  const double nn = static_cast<double>(n);
  const double var_plus = (nn - 1.0) / nn * within + between_n;
  const double r = std::sqrt(var_plus / within);
  return r < 1.0 ? 1.0 : r;
}

PsrfReport gelman_rubin(const PosteriorArchive& archive) {
  archive.validate();
  if (archive.chains < 2) throw ConfigError("gelman_rubin: at least 2 chains required");

  // group rows by the chain id column
  std::map<long, std::vector<Eigen::Index>> by_chain;
  for (Eigen::Index r = 0; r < archive.n_rows(); ++r) {
    by_chain[static_cast<long>(archive.samples(r, PosteriorArchive::kChainColumn))]
        .push_back(r);
  }
  if (by_chain.size() < 2) throw ConfigError("gelman_rubin: at least 2 chains required");
  const std::size_t per_chain = by_chain.begin()->second.size();
  for (const auto& [id, rows] : by_chain) {
    (void)id;
    if (rows.size() != per_chain) {
      throw ConfigError("gelman_rubin: chains hold different sample counts");
    }
  }
  if (per_chain < 10) {
    throw ConfigError("gelman_rubin: at least 10 samples per chain required");
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

  PsrfReport report;
  report.names = names;
  report.values.resize(static_cast<Eigen::Index>(columns.size()));
  for (std::size_t p = 0; p < columns.size(); ++p) {
    std::vector<Eigen::VectorXd> chains;
    chains.reserve(by_chain.size());
    for (const auto& [id, rows] : by_chain) {
      (void)id;
      Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = archive.samples(rows[i], columns[p]);
      }
      chains.push_back(std::move(v));
    }
    report.values(static_cast<Eigen::Index>(p)) = psrf(chains);
  }
  return report;
}

}  // namespace gpcal
