#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "gpcal/errors.hpp"

namespace gpcal {

// Squared-exponential kernel parameters. The observation-noise term is never
// part of the kernel itself; it enters only on the diagonal of K_z.
template <typename Scalar = double>
struct KernelParams {
  Scalar psi;       // correlation length, > 0
  Scalar sigma2_d;  // signal variance, >= 0
};

// K(p,q) = sigma2_d * exp(-((x_p - x_q)/psi)^2) for location vectors xa, xb.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kernel_matrix(const Eigen::MatrixBase<DerivedA>& xa,
              const Eigen::MatrixBase<DerivedB>& xb,
              const KernelParams<typename DerivedA::Scalar>& params) {
  using Scalar = typename DerivedA::Scalar;
  using std::exp;
  if (!(params.psi > Scalar(0)))
    throw ConfigError("kernel_matrix: psi must be positive");
  if (!(params.sigma2_d >= Scalar(0)))
    throw ConfigError("kernel_matrix: sigma2_d must be nonnegative");
  const auto& a = xa.derived();
  const auto& b = xb.derived();
  if (!a.allFinite() || !b.allFinite())
    throw ConfigError("kernel_matrix: non-finite location");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> k(a.size(), b.size());
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const Scalar d = (a(i) - b(j)) / params.psi;
      k(i, j) = params.sigma2_d * exp(-d * d);
    }
  }
  return k;
}

}  // namespace gpcal
