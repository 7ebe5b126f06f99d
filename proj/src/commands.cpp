#include "gpcal/cli/commands.hpp"

#include <filesystem>
#include <memory>
#include <utility>
#include <vector>

#include "gpcal/errors.hpp"
#include "gpcal/infer/sampler.hpp"
#include "gpcal/io/archive.hpp"
#include "gpcal/io/config.hpp"
#include "gpcal/io/dataset.hpp"
#include "gpcal/io/table.hpp"
#include "gpcal/log.hpp"
#include "gpcal/model/basic_example.hpp"
#include "gpcal/model/linear_gaussian.hpp"
#include "gpcal/opt/bfgs.hpp"
#include "gpcal/opt/objective.hpp"
#include "gpcal/report/predictive.hpp"
#include "gpcal/report/summary.hpp"
#include "gpcal/rng.hpp"

namespace gpcal {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  }
}

std::vector<std::string> known_keys(const std::string& model_name) {
  std::vector<std::string> keys{
      "model", "seed", "scenario",
      "sampler.chains", "sampler.populations", "sampler.cycles",
      "sampler.burn_in", "sampler.thin",
      "prior.psi.legacy_sparse", "prior.sigma2.shape", "prior.sigma2.scale",
      "prior.theta.lower", "prior.theta.upper",
      "optimize.theta0", "optimize.rule", "optimize.gradient_tol",
      "optimize.objective_tol", "optimize.max_iterations"};
  if (model_name == "basic-example") {
    for (const char* k :
         {"model.n_rich", "model.n_sparse", "model.x_sparse_lo", "model.x_sparse_hi",
          "model.x_rich_lo", "model.x_rich_hi", "model.a_true", "model.b_true",
          "model.c_true", "model.c", "model.noise_frac_sparse",
          "model.noise_frac_rich", "model.theta_lo", "model.theta_hi"}) {
      keys.emplace_back(k);
    }
  } else if (model_name == "linear-gaussian") {
    for (const char* k : {"model.n", "model.dim", "model.noise_sd",
                          "model.theta_true", "model.box_halfwidth"}) {
      keys.emplace_back(k);
    }
  } else {
    throw ConfigError("config: unknown model '" + model_name + "'");
  }
  return keys;
}

std::string model_name_of(const ConfigMap& cfg) {
  const std::string name = cfg.get_string("model", "basic-example");
  cfg.require_known(known_keys(name));
  return name;
}

BasicExampleConfig basic_config_from(const ConfigMap& cfg) {
  BasicExampleConfig c;
  c.n_rich = cfg.get_long("model.n_rich", c.n_rich);
  c.n_sparse = cfg.get_long("model.n_sparse", c.n_sparse);
  c.x_sparse_lo = cfg.get_double("model.x_sparse_lo", c.x_sparse_lo);
  c.x_sparse_hi = cfg.get_double("model.x_sparse_hi", c.x_sparse_hi);
  c.x_rich_lo = cfg.get_double("model.x_rich_lo", c.x_rich_lo);
  c.x_rich_hi = cfg.get_double("model.x_rich_hi", c.x_rich_hi);
  c.a_true = cfg.get_double("model.a_true", c.a_true);
  c.b_true = cfg.get_double("model.b_true", c.b_true);
  c.c_true = cfg.get_double("model.c_true", c.c_true);
  c.c = cfg.get_double("model.c", c.c);
  c.noise_frac_sparse = cfg.get_double("model.noise_frac_sparse", c.noise_frac_sparse);
  c.noise_frac_rich = cfg.get_double("model.noise_frac_rich", c.noise_frac_rich);
  c.theta_lo = cfg.get_double("model.theta_lo", c.theta_lo);
  c.theta_hi = cfg.get_double("model.theta_hi", c.theta_hi);
  c.validate();
  return c;
}

// Polynomial design in t over [0, 1]: column j holds t^j.
Eigen::MatrixXd polynomial_design(Eigen::Index n, Eigen::Index dim) {
  if (n < 1 || dim < 1) {
    throw ConfigError("linear-gaussian model: n and dim must be positive");
  }
  Eigen::VectorXd t = Eigen::VectorXd::Zero(n);
  if (n > 1) t = Eigen::VectorXd::LinSpaced(n, 0.0, 1.0);
  Eigen::MatrixXd design(n, dim);
  design.col(0).setOnes();
  for (Eigen::Index j = 1; j < dim; ++j) {
    design.col(j) = design.col(j - 1).cwiseProduct(t);
  }
  return design;
}

std::shared_ptr<LinearGaussianModel> linear_model_from(const ConfigMap& cfg) {
  const Eigen::Index n = cfg.get_long("model.n", 50);
  const Eigen::Index dim = cfg.get_long("model.dim", 2);
  const double halfwidth = cfg.get_double("model.box_halfwidth", 10.0);
  return std::make_shared<LinearGaussianModel>(polynomial_design(n, dim), halfwidth);
}

// Model for inversion: constants that are not theta come from the config and
// the generation-time records next to the data.
std::shared_ptr<ForwardModel> model_for_inversion(const ConfigMap& cfg,
                                                  const std::string& model_name,
                                                  const fs::path& data) {
  if (model_name == "basic-example") {
    const BasicExampleConfig bc = basic_config_from(cfg);
    const auto truth = read_scalars(data / "truth.csv");
    const BasicExampleInputs inputs{
        bc.c, require_scalar(truth, "x1_sparse", (data / "truth.csv").string()),
        require_scalar(truth, "xbar_rich", (data / "truth.csv").string())};
    return std::make_shared<BasicExampleModel>(bc, inputs);
  }
  return linear_model_from(cfg);
}

ThetaPrior theta_prior_from(const ConfigMap& cfg, const ForwardModel& model) {
  ThetaPrior prior;
  prior.lower = cfg.has("prior.theta.lower") ? cfg.get_vector("prior.theta.lower")
                                             : model.theta_lower();
  prior.upper = cfg.has("prior.theta.upper") ? cfg.get_vector("prior.theta.upper")
                                             : model.theta_upper();
  prior.validate(model.theta_dim());
  return prior;
}

Priors priors_from(const ConfigMap& cfg, const ForwardModel& model,
                   const std::vector<ObservationStream>& streams) {
  Priors priors;
  priors.theta = theta_prior_from(cfg, model);
  priors.sigma2.shape = cfg.get_double("prior.sigma2.shape", 1.005);
  priors.sigma2.scale = cfg.get_double("prior.sigma2.scale", 0.1);
  const bool legacy = cfg.get_bool("prior.psi.legacy_sparse", false);
  priors.psi.reserve(streams.size());
  for (const auto& stream : streams) {
    if (legacy && stream.name == "sparse") {
      priors.psi.push_back(kPsiPriorLegacySparse);
    } else {
      priors.psi.push_back(psi_prior_from_range(stream.range()));
    }
  }
  return priors;
}

SamplerSettings sampler_settings_from(const ConfigMap& cfg) {
  SamplerSettings s;
  s.chains = static_cast<int>(cfg.get_long("sampler.chains", 8));
  s.populations = static_cast<int>(cfg.get_long("sampler.populations", 2));
  s.cycles = cfg.get_long("sampler.cycles", 4000);
  s.burn_in = cfg.get_long("sampler.burn_in", -1);
  s.thin = static_cast<int>(cfg.get_long("sampler.thin", 4));
  if (s.thin > 48) throw ConfigError("config: sampler.thin must be at most 48");
  return s;
}

std::shared_ptr<ForwardModel> model_from_archive(const PosteriorArchive& archive) {
  auto get = [&](const std::string& key) -> std::string {
    for (const auto& [k, v] : archive.extra_meta) {
      if (k == key) return v;
    }
    throw IoError("archive: missing model constant '" + key + "'");
  };
  if (archive.model_name == "basic-example") {
    const BasicExampleInputs inputs{
        parse_double_strict(get("model.c"), "archive model.c"),
        parse_double_strict(get("model.x1_sparse"), "archive model.x1_sparse"),
        parse_double_strict(get("model.xbar_rich"), "archive model.xbar_rich")};
    return std::make_shared<BasicExampleModel>(BasicExampleConfig{}, inputs);
  }
  if (archive.model_name == "linear-gaussian") {
    const auto n = static_cast<Eigen::Index>(
        parse_double_strict(get("model.n"), "archive model.n"));
    const auto dim = static_cast<Eigen::Index>(
        parse_double_strict(get("model.dim"), "archive model.dim"));
    return std::make_shared<LinearGaussianModel>(polynomial_design(n, dim));
  }
  throw IoError("archive: unknown model '" + archive.model_name + "'");
}

}  // namespace

void cmd_generate(const GenerateArgs& args) {
  const ConfigMap cfg = read_config(args.config);
  const std::string model_name = model_name_of(cfg);
  const std::uint64_t seed = cfg.get_u64("seed", 0);
  ensure_dir(args.out);
  const fs::path out(args.out);
  Rng rng = make_rng(seed, 0);

  if (model_name == "basic-example") {
    const BasicExampleConfig bc = basic_config_from(cfg);
    const SyntheticData data = generate_synthetic_data(bc, rng);
    for (const auto& stream : data.streams) write_stream(out, stream);
    const TruthRecord& t = data.truth;
    write_scalars(out / "truth.csv",
                  {{"a", t.a},
                   {"b", t.b},
                   {"c_true", t.c_true},
                   {"x1_sparse", t.x1_sparse},
                   {"xbar_rich", t.xbar_rich},
                   {"noise_sd_sparse", t.noise_sd_sparse},
                   {"noise_sd_rich", t.noise_sd_rich}});
    write_truth_curve(out, "sparse", data.streams[0].locations, t.o_star_sparse);
    write_truth_curve(out, "rich", data.streams[1].locations, t.o_star_rich);
    log::info("generated basic-example data with seed " + std::to_string(seed));
    return;
  }

  const auto model = linear_model_from(cfg);
  const Eigen::VectorXd theta_true = cfg.has("model.theta_true")
                                         ? cfg.get_vector("model.theta_true")
                                         : Eigen::VectorXd::Ones(model->theta_dim());
  if (theta_true.size() != model->theta_dim()) {
    throw ConfigError("config: model.theta_true does not match model.dim");
  }
  const double noise_sd = cfg.get_double("model.noise_sd", 0.1);
  const ObservationStream stream =
      linear_gaussian_generate(*model, theta_true, noise_sd, rng);
  write_stream(out, stream);
  std::vector<std::pair<std::string, double>> scalars;
  const auto names = model->theta_names();
  for (Eigen::Index i = 0; i < theta_true.size(); ++i) {
    scalars.emplace_back(names[static_cast<std::size_t>(i)], theta_true(i));
  }
  scalars.emplace_back("noise_sd", noise_sd);
  write_scalars(out / "truth.csv", scalars);
  write_truth_curve(out, "y", stream.locations, model->design() * theta_true);
  log::info("generated linear-gaussian data with seed " + std::to_string(seed));
}

void cmd_invert(const InvertArgs& args) {
  const ConfigMap cfg = read_config(args.config);
  const std::string model_name = model_name_of(cfg);
  const fs::path data(args.data);

  const auto model = model_for_inversion(cfg, model_name, data);
  const auto streams = read_streams(data, model->stream_names());
  const Priors priors = priors_from(cfg, *model, streams);

  SamplerSettings settings = sampler_settings_from(cfg);
  settings.seed = args.seed ? *args.seed : cfg.get_u64("seed", 0);
  settings.scenario = scenario_from_name(
      args.scenario.empty() ? cfg.get_string("scenario", "gp") : args.scenario);

  PosteriorArchive archive = run_sampler(*model, streams, priors, settings);
  archive.config_fingerprint = fingerprint_hex(cfg.raw_bytes());
  if (model_name == "basic-example") {
    const auto* basic = static_cast<const BasicExampleModel*>(model.get());
    archive.extra_meta.emplace_back("model.c", format_g17(basic->inputs().c));
    archive.extra_meta.emplace_back("model.x1_sparse",
                                    format_g17(basic->inputs().x1_sparse));
    archive.extra_meta.emplace_back("model.xbar_rich",
                                    format_g17(basic->inputs().xbar_rich));
  } else {
    const auto* linear = static_cast<const LinearGaussianModel*>(model.get());
    archive.extra_meta.emplace_back(
        "model.n", std::to_string(linear->design().rows()));
    archive.extra_meta.emplace_back(
        "model.dim", std::to_string(linear->design().cols()));
  }

  ensure_dir(args.out);
  write_archive(fs::path(args.out) / "archive.csv", archive);
  log::info("archive holds " + std::to_string(archive.n_rows()) + " rows");
}

void cmd_optimize(const OptimizeArgs& args) {
  const ConfigMap cfg = read_config(args.config);
  const std::string model_name = model_name_of(cfg);
  const fs::path data(args.data);

  const auto model = model_for_inversion(cfg, model_name, data);
  const auto streams = read_streams(data, model->stream_names());
  const ThetaPrior prior = theta_prior_from(cfg, *model);

  const std::string scenario =
      args.scenario.empty() ? cfg.get_string("scenario", "ignore") : args.scenario;
  Objective objective;
  FixedGpConfig fixed;
  if (scenario == "ignore") {
    objective = [&](const Eigen::VectorXd& theta) {
      return objective_ignore(theta, streams, *model, prior);
    };
  } else if (scenario == "gp-fixed") {
    const std::string rule_name = cfg.get_string("optimize.rule", "sd");
    SignalVarianceRule rule;
    if (rule_name == "sd") {
      rule = SignalVarianceRule::sd_multiplier;
    } else if (rule_name == "variance") {
      rule = SignalVarianceRule::variance_multiplier;
    } else {
      throw ConfigError("config: optimize.rule must be sd or variance");
    }
    fixed = fixed_gp_config(streams, rule);
    objective = [&](const Eigen::VectorXd& theta) {
      return objective_gp_fixed(theta, streams, *model, prior, fixed);
    };
  } else {
    throw ConfigError("optimize: scenario must be ignore or gp-fixed");
  }

  const Eigen::VectorXd theta0 = cfg.has("optimize.theta0")
                                     ? cfg.get_vector("optimize.theta0")
                                     : ((prior.lower + prior.upper) / 2.0).eval();
  if (theta0.size() != model->theta_dim()) {
    throw ConfigError("config: optimize.theta0 does not match the model dimension");
  }
  BfgsSettings settings;
  settings.gradient_tol = cfg.get_double("optimize.gradient_tol", settings.gradient_tol);
  settings.objective_tol = cfg.get_double("optimize.objective_tol", settings.objective_tol);
  settings.max_iterations =
      static_cast<int>(cfg.get_long("optimize.max_iterations", settings.max_iterations));

  const OptimumReport report = bfgs_minimize(objective, theta0, settings);
  if (!report.converged) {
    log::warn("optimizer did not report convergence after " +
              std::to_string(report.iterations) + " iterations");
  }

  ensure_dir(args.out);
  const fs::path out(args.out);
  std::vector<std::pair<std::string, double>> scalars;
  const auto names = model->theta_names();
  for (Eigen::Index i = 0; i < report.theta_hat.size(); ++i) {
    scalars.emplace_back(names[static_cast<std::size_t>(i)], report.theta_hat(i));
  }
  scalars.emplace_back("objective", report.objective);
  scalars.emplace_back("converged", report.converged ? 1.0 : 0.0);
  scalars.emplace_back("iterations", static_cast<double>(report.iterations));
  write_scalars(out / "optimum.csv", scalars);
  write_table(out / "hessian.csv", make_numeric_table(names, report.hessian));
  write_table(out / "laplace_cov.csv", make_numeric_table(names, report.laplace_cov));
}

void cmd_report(const ReportArgs& args) {
  const PosteriorArchive archive = read_archive(args.archive);
  ensure_dir(args.out);
  const fs::path out(args.out);

  const ParameterSummary summary = parameter_summary(archive);
  Table table;
  table.header = {"parameter"};
  for (const auto& stat : ParameterSummary::stat_names()) table.header.push_back(stat);
  for (std::size_t p = 0; p < summary.names.size(); ++p) {
    std::vector<std::string> row{summary.names[p]};
    for (Eigen::Index c = 0; c < summary.stats.cols(); ++c) {
      row.push_back(format_g17(summary.stats(static_cast<Eigen::Index>(p), c)));
    }
    table.rows.push_back(std::move(row));
  }
  write_table(out / "summary.csv", table);

  if (archive.scenario == Scenario::gp) {
    const DiscrepancySummary ds = discrepancy_summary(archive);
    Table dtable;
    dtable.header = {"stream",           "sigma2_q025",     "sigma2_q500",
                     "sigma2_q975",      "log_sigma2_q025", "log_sigma2_q500",
                     "log_sigma2_q975"};
    for (std::size_t k = 0; k < ds.streams.size(); ++k) {
      const auto row = static_cast<Eigen::Index>(k);
      dtable.rows.push_back({ds.streams[k],
                             format_g17(ds.sigma2_quantiles(row, 0)),
                             format_g17(ds.sigma2_quantiles(row, 1)),
                             format_g17(ds.sigma2_quantiles(row, 2)),
                             format_g17(ds.log_sigma2_quantiles(row, 0)),
                             format_g17(ds.log_sigma2_quantiles(row, 1)),
                             format_g17(ds.log_sigma2_quantiles(row, 2))});
    }
    write_table(out / "discrepancy.csv", dtable);

    Table rtable;
    rtable.header = {"numerator", "denominator", "q025", "q500", "q975"};
    for (std::size_t p = 0; p < ds.ratio_pairs.size(); ++p) {
      const auto row = static_cast<Eigen::Index>(p);
      rtable.rows.push_back({ds.ratio_pairs[p].first, ds.ratio_pairs[p].second,
                             format_g17(ds.ratio_quantiles(row, 0)),
                             format_g17(ds.ratio_quantiles(row, 1)),
                             format_g17(ds.ratio_quantiles(row, 2))});
    }
    write_table(out / "discrepancy_ratios.csv", rtable);
  }
}

void cmd_predict(const PredictArgs& args) {
  const PosteriorArchive archive = read_archive(args.archive);
  const auto model = model_from_archive(archive);
  const auto streams = read_streams(args.data, archive.stream_names);
  // dedicated stream id so prediction draws never collide with chain streams
  Rng rng = make_rng(archive.seed, 1000);
  const auto bands = predictive_bands(archive, *model, streams, rng);

  ensure_dir(args.out);
  const fs::path out(args.out);
  for (const auto& band : bands) {
    const bool has_process = band.process_band.size() > 0;
    Table table;
    table.header = {"location", "model_q025", "model_q500", "model_q975"};
    if (has_process) {
      table.header.insert(table.header.end(),
                          {"process_q025", "process_q500", "process_q975"});
    }
    for (Eigen::Index i = 0; i < band.locations.size(); ++i) {
      std::vector<std::string> row{format_g17(band.locations(i)),
                                   format_g17(band.model_band(i, 0)),
                                   format_g17(band.model_band(i, 1)),
                                   format_g17(band.model_band(i, 2))};
      if (has_process) {
        row.push_back(format_g17(band.process_band(i, 0)));
        row.push_back(format_g17(band.process_band(i, 1)));
        row.push_back(format_g17(band.process_band(i, 2)));
      }
      table.rows.push_back(std::move(row));
    }
    write_table(out / ("band_" + band.stream + ".csv"), table);
  }
}

}  // namespace gpcal
