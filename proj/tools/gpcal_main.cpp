#include <cstdint>
#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "gpcal/cli/commands.hpp"
#include "gpcal/errors.hpp"

namespace {

int fail(const char* kind, const std::exception& err, int code) {
  std::cerr << "gpcal: " << kind << ": " << err.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bayesian calibration of deterministic forward models against "
      "imbalanced observation streams, with per-stream GP discrepancy"};
  app.require_subcommand(1);

  gpcal::GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "draw a synthetic data set");
  generate->add_option("--config", gen.config, "configuration file")->required();
  generate->add_option("--out", gen.out, "output directory")->required();

  gpcal::InvertArgs inv;
  std::uint64_t seed_flag = 0;
  auto* invert = app.add_subcommand("invert", "sample the posterior");
  invert->add_option("--config", inv.config, "configuration file")->required();
  invert->add_option("--data", inv.data, "data directory")->required();
  invert->add_option("--out", inv.out, "output directory")->required();
  invert->add_option("--scenario", inv.scenario, "ignore or gp");
  invert->add_option("--seed", seed_flag, "seed override");

  gpcal::OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "point estimate with Laplace covariance");
  optimize->add_option("--config", opt.config, "configuration file")->required();
  optimize->add_option("--data", opt.data, "data directory")->required();
  optimize->add_option("--out", opt.out, "output directory")->required();
  optimize->add_option("--scenario", opt.scenario, "ignore or gp-fixed");

  gpcal::ReportArgs rep;
  auto* report = app.add_subcommand("report", "summarize a posterior archive");
  report->add_option("--archive", rep.archive, "archive file")->required();
  report->add_option("--out", rep.out, "output directory")->required();

  gpcal::PredictArgs pre;
  auto* predict = app.add_subcommand("predict", "posterior predictive bands");
  predict->add_option("--archive", pre.archive, "archive file")->required();
  predict->add_option("--data", pre.data, "data directory")->required();
  predict->add_option("--out", pre.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 2;
  }

  try {
    if (*generate) {
      gpcal::cmd_generate(gen);
    } else if (*invert) {
      if (invert->count("--seed") > 0) inv.seed = seed_flag;
      gpcal::cmd_invert(inv);
    } else if (*optimize) {
      gpcal::cmd_optimize(opt);
    } else if (*report) {
      gpcal::cmd_report(rep);
    } else if (*predict) {
      gpcal::cmd_predict(pre);
    }
    return 0;
  } catch (const gpcal::ConfigError& err) {
    return fail("configuration error", err, 2);
  } catch (const gpcal::NumericalError& err) {
    return fail("numerical failure", err, 3);
  } catch (const gpcal::IoError& err) {
    return fail("io failure", err, 4);
  } catch (const std::exception& err) {
    return fail("unexpected failure", err, 3);
  }
}
