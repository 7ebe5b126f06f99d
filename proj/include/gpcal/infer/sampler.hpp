#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gpcal/infer/priors.hpp"
#include "gpcal/model/forward.hpp"
#include "gpcal/model/stream.hpp"

namespace gpcal {

enum class Scenario { ignore, gp };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

struct SamplerSettings {
  int chains = 8;
  int populations = 2;
  long cycles = 4000;
  long burn_in = -1;  // negative: cycles / 2
  int thin = 4;
  std::uint64_t seed = 0;
  Scenario scenario = Scenario::gp;

  long effective_burn_in() const { return burn_in < 0 ? cycles / 2 : burn_in; }
};

// Retained draws in a flat matrix, one row per (generation, chain). Column
// layout: chain, generation, theta components, then for the gp scenario one
// (psi, sigma2) pair per stream, and finally the cached log density. The
// metadata mirrors what the archive file stores as comment lines.
struct PosteriorArchive {
  Scenario scenario = Scenario::gp;
  std::uint64_t seed = 0;
  int chains = 0;
  std::string model_name;
  std::string config_fingerprint;
  std::vector<std::string> theta_names;
  std::vector<std::string> stream_names;
  std::vector<std::pair<std::string, std::string>> extra_meta;
  Eigen::MatrixXd samples;

  Eigen::Index theta_dim() const { return static_cast<Eigen::Index>(theta_names.size()); }
  Eigen::Index n_streams() const { return static_cast<Eigen::Index>(stream_names.size()); }
  Eigen::Index n_rows() const { return samples.rows(); }
  Eigen::Index n_columns() const;

  static constexpr Eigen::Index kChainColumn = 0;
  static constexpr Eigen::Index kGenerationColumn = 1;
  Eigen::Index theta_column(Eigen::Index i) const { return 2 + i; }
  Eigen::Index psi_column(Eigen::Index stream) const;     // gp scenario only
  Eigen::Index sigma2_column(Eigen::Index stream) const;  // gp scenario only
  Eigen::Index logp_column() const { return n_columns() - 1; }

  std::vector<std::string> column_names() const;
  void validate() const;
};

// Block-at-a-time sampler: per cycle and chain, a differential-evolution
// Metropolis update of each stream's log correlation length (fresh supports
// per proposal), an exact Gibbs draw of each stream's normalized signal
// variance with the discrepancy refreshed afterwards, then a
// differential-evolution Metropolis update of theta with supports held
// fixed. The ignore scenario runs the theta block only. Chains are split
// into equal contiguous populations that never exchange proposal partners.
PosteriorArchive run_sampler(const ForwardModel& model,
                             const std::vector<ObservationStream>& streams,
                             const Priors& priors, const SamplerSettings& settings);

}  // namespace gpcal
