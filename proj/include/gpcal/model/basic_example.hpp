#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "gpcal/model/forward.hpp"
#include "gpcal/model/stream.hpp"
#include "gpcal/rng.hpp"

namespace gpcal {

// Two imbalanced synthetic streams observing a linear process. The inverted
// model carries a deliberately biased constant c, so part of the signal can
// only be explained as model discrepancy.
struct BasicExampleConfig {
  Eigen::Index n_rich = 1000;
  Eigen::Index n_sparse = 10;
  double x_sparse_lo = 0.5, x_sparse_hi = 1.5;
  double x_rich_lo = 0.7, x_rich_hi = 1.0;
  double a_true = 1.0, b_true = 2.0, c_true = 0.3;
  double c = 0.1;                   // bias constant used by the inverted model
  double noise_frac_sparse = 0.04;  // noise sd as a fraction of mean(o*)
  double noise_frac_rich = 0.03;
  double theta_lo = 0.0, theta_hi = 4.0;  // flat prior box for (a, b)

  void validate() const;
};

// Fixed model inputs besides theta: the bias constant, the first sparse
// covariate as drawn (before sorting), and the sample mean of the rich
// covariates in draw order. Both summaries are recorded at generation time
// because they are not bit-recoverable from the sorted locations.
struct BasicExampleInputs {
  double c;
  double x1_sparse;
  double xbar_rich;
};

// sparse_i = a*x_sparse_i + b*xbar_rich/10
// rich_j   = a*x1_sparse  + b*(x_rich_j - c)
std::pair<Eigen::VectorXd, Eigen::VectorXd> basic_example_predict(
    double a, double b, const Eigen::VectorXd& x_sparse,
    const Eigen::VectorXd& x_rich, const BasicExampleInputs& inputs);

// Everything needed to score results against the generating process.
struct TruthRecord {
  double a, b, c_true;
  double x1_sparse;
  double xbar_rich;
  double noise_sd_sparse, noise_sd_rich;
  Eigen::VectorXd o_star_sparse;  // noise-free values at sorted locations
  Eigen::VectorXd o_star_rich;
};

struct SyntheticData {
  std::vector<ObservationStream> streams;  // "sparse", "rich"
  TruthRecord truth;
};

// Draws covariates from the configured uniforms, evaluates the true process at
// (a_true, b_true, c_true), adds Gaussian noise with sd equal to the
// configured fraction of each stream's noise-free mean, and records the
// squared sd as sigma2_eps. Bit-reproducible for a fixed rng state.
SyntheticData generate_synthetic_data(const BasicExampleConfig& cfg, Rng& rng);

class BasicExampleModel : public ForwardModel {
 public:
  BasicExampleModel(const BasicExampleConfig& cfg, BasicExampleInputs inputs)
      : cfg_(cfg), inputs_(inputs) {}

  std::string name() const override { return "basic-example"; }
  Eigen::Index theta_dim() const override { return 2; }
  std::vector<std::string> theta_names() const override { return {"a", "b"}; }
  Eigen::VectorXd theta_lower() const override {
    return Eigen::Vector2d::Constant(cfg_.theta_lo);
  }
  Eigen::VectorXd theta_upper() const override {
    return Eigen::Vector2d::Constant(cfg_.theta_hi);
  }
  std::vector<std::string> stream_names() const override {
    return {"sparse", "rich"};
  }
  Eigen::VectorXd predict(const Eigen::VectorXd& theta,
                          const ObservationStream& stream) const override;

  const BasicExampleInputs& inputs() const { return inputs_; }

 private:
  BasicExampleConfig cfg_;
  BasicExampleInputs inputs_;
};

}  // namespace gpcal
