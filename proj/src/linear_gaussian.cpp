#include "gpcal/model/linear_gaussian.hpp"

#include <Eigen/QR>

#include "gpcal/errors.hpp"

namespace gpcal {

LinearGaussianModel::LinearGaussianModel(Eigen::MatrixXd design,
                                         double box_halfwidth)
    : design_(std::move(design)), box_halfwidth_(box_halfwidth) {
  if (design_.rows() < design_.cols() || design_.cols() < 1)
    throw ConfigError("linear-gaussian: design must be n x d with n >= d >= 1");
  if (!(box_halfwidth_ > 0.0))
    throw ConfigError("linear-gaussian: box halfwidth must be positive");
}

std::vector<std::string> LinearGaussianModel::theta_names() const {
  std::vector<std::string> names;
  for (Eigen::Index i = 0; i < design_.cols(); ++i)
    names.push_back("theta" + std::to_string(i));
  return names;
}

Eigen::VectorXd LinearGaussianModel::predict(
    const Eigen::VectorXd& theta, const ObservationStream& stream) const {
  if (theta.size() != design_.cols())
    throw ConfigError("linear-gaussian: theta dimension mismatch");
  if (stream.n() != design_.rows())
    throw ConfigError("linear-gaussian: stream length does not match design");
  return design_ * theta;
}

std::shared_ptr<LinearGaussianModel> linear_gaussian_test_model(
    Eigen::Index dimension, Eigen::MatrixXd design) {
  if (design.cols() != dimension)
    throw ConfigError("linear-gaussian: design columns must equal dimension");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < dimension)
    throw ConfigError("linear-gaussian: rank-deficient design");
  return std::make_shared<LinearGaussianModel>(std::move(design));
}

ObservationStream linear_gaussian_generate(const LinearGaussianModel& model,
                                           const Eigen::VectorXd& theta_true,
                                           double noise_sd, Rng& rng) {
  if (!(noise_sd > 0.0))
    throw ConfigError("linear-gaussian: noise sd must be positive");
  const Eigen::Index n = model.design().rows();
  ObservationStream s;
  s.name = "y";
  s.locations = Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
  const Eigen::VectorXd mean = model.design() * theta_true;
  std::normal_distribution<double> n01(0.0, 1.0);
  s.observations.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    s.observations(i) = mean(i) + noise_sd * n01(rng);
  s.sigma2_eps = Eigen::VectorXd::Constant(n, noise_sd * noise_sd);
  s.validate();
  return s;
}

}  // namespace gpcal
