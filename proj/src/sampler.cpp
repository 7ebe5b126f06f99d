#include "gpcal/infer/sampler.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

#include "gpcal/errors.hpp"
#include "gpcal/gp/conditional.hpp"
#include "gpcal/gp/kernel.hpp"
#include "gpcal/infer/demc.hpp"
#include "gpcal/infer/density.hpp"
#include "gpcal/infer/gibbs.hpp"
#include "gpcal/infer/metropolis.hpp"
#include "gpcal/log.hpp"
#include "gpcal/rng.hpp"

namespace gpcal {

std::string scenario_name(Scenario s) {
  return s == Scenario::ignore ? "ignore" : "gp";
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "ignore") return Scenario::ignore;
  if (name == "gp") return Scenario::gp;
  throw ConfigError("unknown scenario '" + name + "' (expected ignore or gp)");
}

Eigen::Index PosteriorArchive::n_columns() const {
  Eigen::Index cols = 2 + theta_dim() + 1;
  if (scenario == Scenario::gp) cols += 2 * n_streams();
  return cols;
}

Eigen::Index PosteriorArchive::psi_column(Eigen::Index stream) const {
  if (scenario != Scenario::gp) {
    throw ConfigError("archive: ignore-scenario archives carry no hyperparameter columns");
  }
  return 2 + theta_dim() + 2 * stream;
}

Eigen::Index PosteriorArchive::sigma2_column(Eigen::Index stream) const {
  return psi_column(stream) + 1;
}

std::vector<std::string> PosteriorArchive::column_names() const {
  std::vector<std::string> names{"chain", "generation"};
  names.insert(names.end(), theta_names.begin(), theta_names.end());
  if (scenario == Scenario::gp) {
    for (const auto& s : stream_names) {
      names.push_back("psi_" + s);
      names.push_back("sigma2_" + s);
    }
  }
  names.push_back("logp");
  return names;
}

void PosteriorArchive::validate() const {
  if (theta_names.empty()) throw ConfigError("archive: no parameter names");
  if (scenario == Scenario::gp && stream_names.empty()) {
    throw ConfigError("archive: gp-scenario archive without stream names");
  }
  if (samples.cols() != n_columns()) {
    throw ConfigError("archive: sample matrix does not match the column layout");
  }
  if (chains < 1) throw ConfigError("archive: chain count missing");
  if (samples.rows() % chains != 0) {
    throw ConfigError("archive: row count is not a whole number of generations");
  }
}

namespace {

struct ChainState {
  Eigen::VectorXd theta;
  std::vector<StreamGpState> hyper;
  std::vector<Eigen::VectorXd> residuals;  // o - g(theta), one per stream
  std::vector<DiscrepancyEstimate<double>> estimates;
  std::vector<double> terms;  // per-stream data + penalty
  double logp = 0.0;
};

}  // namespace

PosteriorArchive run_sampler(const ForwardModel& model,
                             const std::vector<ObservationStream>& streams,
                             const Priors& priors, const SamplerSettings& cfg) {
  const Eigen::Index dim = model.theta_dim();
  const int min_chains = std::max(4, static_cast<int>(dim) + 1);
  if (cfg.chains < min_chains) {
    throw ConfigError("sampler: at least max(4, theta_dim + 1) chains required");
  }
  if (cfg.populations < 1) throw ConfigError("sampler: at least one population required");
  if (cfg.chains % cfg.populations != 0) {
    throw ConfigError("sampler: chains must split evenly into populations");
  }
  const int per_pop = cfg.chains / cfg.populations;
  if (per_pop < 3) throw ConfigError("sampler: each population needs at least 3 chains");
  if (cfg.thin < 1) throw ConfigError("sampler: thinning interval must be positive");
  if (cfg.cycles < 0) throw ConfigError("sampler: cycle count must be non-negative");
  const long burn = cfg.effective_burn_in();
  if (burn < 0) throw ConfigError("sampler: burn-in must be non-negative");
  if (streams.empty()) throw ConfigError("sampler: at least one observation stream required");
  for (const auto& s : streams) s.validate();
  priors.theta.validate(dim);

  const bool gp = cfg.scenario == Scenario::gp;
  const std::size_t n_streams = streams.size();
  if (gp && priors.psi.size() != n_streams) {
    throw ConfigError("sampler: one psi prior per stream required");
  }
  const auto model_streams = model.stream_names();
  if (model_streams.size() != n_streams) {
    throw ConfigError("sampler: stream count does not match the forward model");
  }
  for (std::size_t k = 0; k < n_streams; ++k) {
    if (streams[k].name != model_streams[k]) {
      throw ConfigError("sampler: stream '" + streams[k].name +
                        "' does not match model stream '" + model_streams[k] + "'");
    }
  }

  const int n_chains = cfg.chains;
  std::vector<Rng> rng;
  rng.reserve(n_chains);
  for (int c = 0; c < n_chains; ++c) {
    rng.push_back(make_rng(cfg.seed, static_cast<std::uint64_t>(c) + 1));
  }

  // Proposal jitter: 1e-6 of the prior box width per theta component; for
  // the log correlation length, 1e-6 of the log width of the widest
  // admissible truncation interval [2/3 mean spacing, range].
  const Eigen::VectorXd theta_jitter = 1e-6 * (priors.theta.upper - priors.theta.lower);
  std::vector<double> psi_jitter(n_streams, 1e-6);
  if (gp) {
    for (std::size_t k = 0; k < n_streams; ++k) {
      const Eigen::Index n = streams[k].n();
      if (n >= 2 && streams[k].range() > 0.0) {
        psi_jitter[k] = 1e-6 * std::log(1.5 * static_cast<double>(n - 1));
      }
    }
  }

  std::vector<ChainState> chains(n_chains);
  for (int c = 0; c < n_chains; ++c) {
    auto& ch = chains[c];
    ch.theta.resize(dim);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Eigen::Index i = 0; i < dim; ++i) {
      ch.theta(i) = priors.theta.lower(i) +
                    unif(rng[c]) * (priors.theta.upper(i) - priors.theta.lower(i));
    }
    if (gp) {
      ch.hyper.resize(n_streams);
      for (std::size_t k = 0; k < n_streams; ++k) {
        auto& st = ch.hyper[k];
        const double range = streams[k].range();
        st.psi = range > 0.0 ? range / 3.0 : 1.0;
        st.sigma2_norm = priors.sigma2.mode();
        st.support = select_supporting_points(streams[k].locations, st.psi, rng[c]);
      }
      ch.logp = log_density_gp(ch.theta, ch.hyper, streams, model, priors.theta,
                               &ch.estimates, &ch.terms, &ch.residuals);
    } else {
      ch.logp = log_density_ignore(ch.theta, streams, model, priors.theta);
    }
  }
  bool any_finite = false;
  for (const auto& ch : chains) any_finite = any_finite || std::isfinite(ch.logp);
  if (!any_finite) {
    std::ostringstream msg;
    msg << "sampler: initial log density is not finite on any chain;";
    for (int c = 0; c < n_chains; ++c) {
      msg << " chain " << c << ": logp " << chains[c].logp
          << " at theta " << chains[c].theta.transpose() << ";";
    }
    throw NumericalError(msg.str());
  }

  // Outlier-chain guard (burn-in only). A small DEMC population can trap a
  // chain: either its difference vectors stop spanning the direction the
  // chain needs (it then moves by jitter diffusion alone), or the chain
  // settles into a local mode of negligible mass that plain differential
  // proposals cannot leave. Both show up as a chain whose average log
  // density trails the best chain's by far more than the within-mode spread
  // (order of the sampled dimension count), so every 50 cycles during the
  // middle half of burn-in a chain trailing the best 50-cycle mean by more
  // than reset_gap is re-seeded at the best chain's current state. Retained
  // draws are never produced in this window and no rng is consumed, so the
  // recorded chain is untouched in law and bit-reproducible.
  const double n_sampled_dims =
      static_cast<double>(dim) + (gp ? 2.0 * static_cast<double>(n_streams) : 0.0);
  const double reset_gap = 10.0 + 2.0 * n_sampled_dims;
  constexpr long kGuardPeriod = 50;
  Eigen::VectorXd lp_window = Eigen::VectorXd::Zero(n_chains);

  const long keep = cfg.cycles > burn ? (cfg.cycles - burn) / cfg.thin : 0;
  PosteriorArchive archive;
  archive.scenario = cfg.scenario;
  archive.seed = cfg.seed;
  archive.chains = n_chains;
  archive.model_name = model.name();
  archive.theta_names = model.theta_names();
  archive.stream_names = model_streams;
  archive.samples.resize(keep * n_chains, archive.n_columns());
  Eigen::Index row = 0;

  for (long g = 1; g <= cfg.cycles; ++g) {
    // proposal partners come from the population as it stood at cycle start
    std::vector<Eigen::VectorXd> theta_snap(n_chains);
    for (int c = 0; c < n_chains; ++c) theta_snap[c] = chains[c].theta;
    Eigen::MatrixXd lnpsi_snap;
    if (gp) {
      lnpsi_snap.resize(n_chains, static_cast<Eigen::Index>(n_streams));
      for (int c = 0; c < n_chains; ++c) {
        for (std::size_t k = 0; k < n_streams; ++k) {
          lnpsi_snap(c, static_cast<Eigen::Index>(k)) = std::log(chains[c].hyper[k].psi);
        }
      }
    }

    for (int c = 0; c < n_chains; ++c) {
      auto& ch = chains[c];
      const int pop_begin = (c / per_pop) * per_pop;
      const std::size_t self = static_cast<std::size_t>(c % per_pop);

      if (gp) {
        // (1) correlation lengths, one Metropolis step per stream in log space
        for (std::size_t k = 0; k < n_streams; ++k) {
          const auto& stream = streams[k];
          auto& st = ch.hyper[k];
          Eigen::VectorXd u_cur(1);
          u_cur(0) = std::log(st.psi);
          std::vector<Eigen::VectorXd> pop_snap(per_pop);
          for (int j = 0; j < per_pop; ++j) {
            pop_snap[j].resize(1);
            pop_snap[j](0) = lnpsi_snap(pop_begin + j, static_cast<Eigen::Index>(k));
          }
          const double gamma = demc_gamma(1, rng[c]);
          Eigen::VectorXd jitter(1);
          jitter(0) = psi_jitter[k];
          const Eigen::VectorXd u_prop =
              demc_propose(u_cur, pop_snap, self, gamma, jitter, rng[c]);
          const double psi_prop = std::exp(u_prop(0));
          SupportSelection sel_prop;
          DiscrepancyEstimate<double> est_prop;
          double term_prop = 0.0;
          // +u terms: Jacobian of the log-space parameterization
          const double target_prop =
              log_conditional_psi(psi_prop, stream, ch.residuals[k], st.sigma2_d(stream),
                                  priors.psi[k], rng[c], sel_prop, &est_prop, &term_prop) +
              u_prop(0);
          const double target_cur =
              ch.terms[k] + log_gamma_unnormalized(st.psi, priors.psi[k]) + u_cur(0);
          if (metropolis_accept(target_cur, target_prop, rng[c])) {
            st.psi = psi_prop;
            st.support = std::move(sel_prop);
            ch.estimates[k] = std::move(est_prop);
            ch.terms[k] = term_prop;
          }
        }

        // (2) exact signal variance draw per stream; the discrepancy and the
        // cached density are refreshed before theta sees them
        for (std::size_t k = 0; k < n_streams; ++k) {
          const auto& stream = streams[k];
          auto& st = ch.hyper[k];
          const Eigen::VectorXd xs = slice(stream.locations, st.support.support_indices);
          const Eigen::MatrixXd lambda_ss =
              kernel_matrix(xs, xs, KernelParams<double>{st.psi, 1.0});
          const double drawn = gibbs_sigma2(ch.estimates[k].delta_s, lambda_ss,
                                            stream.mean_sigma2_eps(), priors.sigma2, rng[c]);
          const double previous = st.sigma2_norm;
          st.sigma2_norm = drawn;
          try {
            const Eigen::VectorXd residual_s =
                slice(ch.residuals[k], st.support.support_indices);
            ch.estimates[k] = conditional_discrepancy(
                residual_s, stream.locations, st.support,
                KernelParams<double>{st.psi, st.sigma2_d(stream)}, stream.mean_sigma2_eps());
            ch.terms[k] = stream_gp_term(stream, ch.residuals[k], st.support, ch.estimates[k]);
          } catch (const NumericalError& err) {
            st.sigma2_norm = previous;  // keep the state the caches describe
            log::warn(std::string("discrepancy refresh failed, variance draw dropped: ") +
                      err.what());
          }
        }
        ch.logp = priors.theta.logp(ch.theta);
        for (std::size_t k = 0; k < n_streams; ++k) ch.logp += ch.terms[k];
      }

      // (3) theta, supports held fixed
      const double gamma = demc_gamma(dim, rng[c]);
      const std::vector<Eigen::VectorXd> pop_snap(
          theta_snap.begin() + pop_begin, theta_snap.begin() + pop_begin + per_pop);
      const Eigen::VectorXd theta_prop =
          demc_propose(ch.theta, pop_snap, self, gamma, theta_jitter, rng[c]);
      if (gp) {
        std::vector<Eigen::VectorXd> res_prop;
        std::vector<DiscrepancyEstimate<double>> est_prop;
        std::vector<double> term_prop;
        const double logp_prop = log_density_gp(theta_prop, ch.hyper, streams, model,
                                                priors.theta, &est_prop, &term_prop, &res_prop);
        if (metropolis_accept(ch.logp, logp_prop, rng[c])) {
          ch.theta = theta_prop;
          ch.residuals = std::move(res_prop);
          ch.estimates = std::move(est_prop);
          ch.terms = std::move(term_prop);
          ch.logp = logp_prop;
        }
      } else {
        const double logp_prop = log_density_ignore(theta_prop, streams, model, priors.theta);
        if (metropolis_accept(ch.logp, logp_prop, rng[c])) {
          ch.theta = theta_prop;
          ch.logp = logp_prop;
        }
      }
    }

    for (int c = 0; c < n_chains; ++c) {
      lp_window(c) += std::isfinite(chains[c].logp)
                          ? chains[c].logp
                          : -std::numeric_limits<double>::max() / kGuardPeriod;
    }
    if (g % kGuardPeriod == 0) {
      if (g >= burn / 4 && g <= 3 * burn / 4) {
        int best = 0;
        for (int c = 1; c < n_chains; ++c) {
          if (lp_window(c) > lp_window(best)) best = c;
        }
        if (std::isfinite(chains[best].logp)) {
          const double cutoff =
              lp_window(best) - reset_gap * static_cast<double>(kGuardPeriod);
          for (int c = 0; c < n_chains; ++c) {
            if (c == best || lp_window(c) >= cutoff) continue;
            chains[c] = chains[best];
            log::debug("cycle " + std::to_string(g) + ": chain " + std::to_string(c) +
                       " re-seeded from chain " + std::to_string(best));
          }
        }
      }
      lp_window.setZero();
    }

    if (g > burn && (g - burn) % cfg.thin == 0) {
      for (int c = 0; c < n_chains; ++c) {
        const auto& ch = chains[c];
        archive.samples(row, PosteriorArchive::kChainColumn) = static_cast<double>(c);
        archive.samples(row, PosteriorArchive::kGenerationColumn) = static_cast<double>(g);
        for (Eigen::Index i = 0; i < dim; ++i) {
          archive.samples(row, archive.theta_column(i)) = ch.theta(i);
        }
        if (gp) {
          for (std::size_t k = 0; k < n_streams; ++k) {
            const auto idx = static_cast<Eigen::Index>(k);
            archive.samples(row, archive.psi_column(idx)) = ch.hyper[k].psi;
            archive.samples(row, archive.sigma2_column(idx)) = ch.hyper[k].sigma2_norm;
          }
        }
        archive.samples(row, archive.logp_column()) = ch.logp;
        ++row;
      }
    }
    if (log::enabled(log::Level::debug) && g % 500 == 0) {
      log::debug("cycle " + std::to_string(g) + " of " + std::to_string(cfg.cycles));
    }
  }

  archive.validate();
  return archive;
}

}  // namespace gpcal
