#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "gpcal/model/forward.hpp"
#include "gpcal/rng.hpp"

namespace gpcal {

// g(theta) = design * theta on a single stream named "y" with locations
// 0..n-1. Conjugate: with Gaussian noise and a flat prior the posterior is
// Gaussian in closed form, which makes this the sampler validation target.
class LinearGaussianModel : public ForwardModel {
 public:
  explicit LinearGaussianModel(Eigen::MatrixXd design,
                               double box_halfwidth = 10.0);

  std::string name() const override { return "linear-gaussian"; }
  Eigen::Index theta_dim() const override { return design_.cols(); }
  std::vector<std::string> theta_names() const override;
  Eigen::VectorXd theta_lower() const override {
    return Eigen::VectorXd::Constant(design_.cols(), -box_halfwidth_);
  }
  Eigen::VectorXd theta_upper() const override {
    return Eigen::VectorXd::Constant(design_.cols(), box_halfwidth_);
  }
  std::vector<std::string> stream_names() const override { return {"y"}; }
  Eigen::VectorXd predict(const Eigen::VectorXd& theta,
                          const ObservationStream& stream) const override;

  const Eigen::MatrixXd& design() const { return design_; }

 private:
  Eigen::MatrixXd design_;
  double box_halfwidth_;
};

// Validates dimensions and full column rank, then wraps the design.
std::shared_ptr<LinearGaussianModel> linear_gaussian_test_model(
    Eigen::Index dimension, Eigen::MatrixXd design);

// y = design*theta_true + noise_sd*N(0,1) per record; sigma2_eps = noise_sd^2.
ObservationStream linear_gaussian_generate(const LinearGaussianModel& model,
                                           const Eigen::VectorXd& theta_true,
                                           double noise_sd, Rng& rng);

}  // namespace gpcal
