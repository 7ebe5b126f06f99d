#include "gpcal/model/basic_example.hpp"

#include <algorithm>
#include <cmath>

#include "gpcal/errors.hpp"

namespace gpcal {

void BasicExampleConfig::validate() const {
  if (n_rich < 1 || n_sparse < 1)
    throw ConfigError("basic-example: stream sizes must be positive");
  if (!(x_sparse_lo < x_sparse_hi) || !(x_rich_lo < x_rich_hi))
    throw ConfigError("basic-example: covariate ranges must be nonempty");
  if (noise_frac_sparse < 0.0 || noise_frac_rich < 0.0)
    throw ConfigError("basic-example: noise fractions must be nonnegative");
  // c below the upper end of the rich covariate range keeps (x - c) positive
  // signal; c itself may sit below the range (that is the modeled bias).
  if (!(c >= 0.0) || !(c <= x_rich_hi))
    throw ConfigError("basic-example: c must lie in [0, upper rich covariate]");
  if (!(c_true >= 0.0) || !(c_true <= x_rich_hi))
    throw ConfigError(
        "basic-example: c_true must lie in [0, upper rich covariate]");
  if (!(theta_lo < theta_hi))
    throw ConfigError("basic-example: empty theta box");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> basic_example_predict(
    double a, double b, const Eigen::VectorXd& x_sparse,
    const Eigen::VectorXd& x_rich, const BasicExampleInputs& in) {
  Eigen::VectorXd sparse(x_sparse.size());
  for (Eigen::Index i = 0; i < x_sparse.size(); ++i)
    sparse(i) = a * x_sparse(i) + b * in.xbar_rich / 10.0;
  Eigen::VectorXd rich(x_rich.size());
  for (Eigen::Index j = 0; j < x_rich.size(); ++j)
    rich(j) = a * in.x1_sparse + b * (x_rich(j) - in.c);
  return {std::move(sparse), std::move(rich)};
}

SyntheticData generate_synthetic_data(const BasicExampleConfig& cfg, Rng& rng) {
  cfg.validate();
  std::uniform_real_distribution<double> u_sparse(cfg.x_sparse_lo,
                                                  cfg.x_sparse_hi);
  std::uniform_real_distribution<double> u_rich(cfg.x_rich_lo, cfg.x_rich_hi);
  std::normal_distribution<double> n01(0.0, 1.0);

  Eigen::VectorXd x_sparse(cfg.n_sparse);
  for (Eigen::Index i = 0; i < cfg.n_sparse; ++i) x_sparse(i) = u_sparse(rng);
  const double x1_sparse = x_sparse(0);  // recorded before sorting
  Eigen::VectorXd x_rich(cfg.n_rich);
  for (Eigen::Index j = 0; j < cfg.n_rich; ++j) x_rich(j) = u_rich(rng);
  const double xbar_rich = x_rich.mean();  // sample mean in draw order

  std::sort(x_sparse.data(), x_sparse.data() + x_sparse.size());
  std::sort(x_rich.data(), x_rich.data() + x_rich.size());

  const BasicExampleInputs truth_inputs{cfg.c_true, x1_sparse, xbar_rich};
  auto [o_star_sparse, o_star_rich] = basic_example_predict(
      cfg.a_true, cfg.b_true, x_sparse, x_rich, truth_inputs);

  const double sd_sparse = cfg.noise_frac_sparse * o_star_sparse.mean();
  const double sd_rich = cfg.noise_frac_rich * o_star_rich.mean();

  SyntheticData out;
  out.streams.resize(2);
  ObservationStream& sparse = out.streams[0];
  sparse.name = "sparse";
  sparse.locations = x_sparse;
  sparse.observations.resize(cfg.n_sparse);
  for (Eigen::Index i = 0; i < cfg.n_sparse; ++i)
    sparse.observations(i) = o_star_sparse(i) + sd_sparse * n01(rng);
  sparse.sigma2_eps =
      Eigen::VectorXd::Constant(cfg.n_sparse, sd_sparse * sd_sparse);

  ObservationStream& rich = out.streams[1];
  rich.name = "rich";
  rich.locations = x_rich;
  rich.observations.resize(cfg.n_rich);
  for (Eigen::Index j = 0; j < cfg.n_rich; ++j)
    rich.observations(j) = o_star_rich(j) + sd_rich * n01(rng);
  rich.sigma2_eps = Eigen::VectorXd::Constant(cfg.n_rich, sd_rich * sd_rich);

  out.truth = TruthRecord{cfg.a_true,  cfg.b_true, cfg.c_true,
                          x1_sparse,   xbar_rich,  sd_sparse,
                          sd_rich,     o_star_sparse, o_star_rich};
  return out;
}

Eigen::VectorXd BasicExampleModel::predict(
    const Eigen::VectorXd& theta, const ObservationStream& stream) const {
  if (theta.size() != 2)
    throw ConfigError("basic-example: theta must have two components");
  if (stream.name == "sparse") {
    Eigen::VectorXd out(stream.n());
    for (Eigen::Index i = 0; i < stream.n(); ++i)
      out(i) = theta(0) * stream.locations(i) +
               theta(1) * inputs_.xbar_rich / 10.0;
    return out;
  }
  if (stream.name == "rich") {
    Eigen::VectorXd out(stream.n());
    for (Eigen::Index j = 0; j < stream.n(); ++j)
      out(j) = theta(0) * inputs_.x1_sparse +
               theta(1) * (stream.locations(j) - inputs_.c);
    return out;
  }
  throw ConfigError("basic-example: unknown stream '" + stream.name + "'");
}

}  // namespace gpcal
