#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gpcal/errors.hpp"
#include "gpcal/gp/kernel.hpp"
#include "gpcal/gp/support.hpp"
#include "gpcal/rng.hpp"

namespace gpcal {

// Conditional expected discrepancy plus the matrices needed downstream for
// penalties, Gibbs updates and conditional draws.
template <typename Scalar = double>
struct DiscrepancyEstimate {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Vec delta_s;              // at supporting locations
  Vec delta_r;              // at remaining locations
  Scalar penalty_quadform;  // delta_s' K_ss^{-1} delta_s, >= 0
  Mat K_ss;
  Mat K_z;  // K_ss + sigma2_eps * I
};

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> slice(
    const Eigen::MatrixBase<Derived>& v,
    const std::vector<Eigen::Index>& idx) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(
      static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = v.derived()(idx[i]);
  return out;
}

// Reassembles support/remaining vectors into location order.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> merge_by_selection(
    const SupportSelection& sel,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& at_supports,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& at_remaining) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(at_supports.size() +
                                               at_remaining.size());
  for (std::size_t i = 0; i < sel.support_indices.size(); ++i)
    out(sel.support_indices[i]) = at_supports(static_cast<Eigen::Index>(i));
  for (std::size_t i = 0; i < sel.remaining_indices.size(); ++i)
    out(sel.remaining_indices[i]) = at_remaining(static_cast<Eigen::Index>(i));
  return out;
}

// Cholesky with escalating diagonal jitter: plain first, then 1e-10*scale
// growing tenfold up to 1e-4*scale. Returns false when everything failed.
template <typename Scalar>
bool llt_with_jitter(
    Eigen::LLT<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>& llt,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
    Scalar scale) {
  llt.compute(m);
  if (llt.info() == Eigen::Success) return true;
  if (!(scale > Scalar(0))) return false;
  for (Scalar j = Scalar(1e-10) * scale; j <= Scalar(1e-4) * scale;
       j *= Scalar(10)) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> jm = m;
    jm.diagonal().array() += j;
    llt.compute(jm);
    if (llt.info() == Eigen::Success) return true;
  }
  return false;
}

namespace detail {

template <typename Scalar>
std::string singular_kss_message(
    const KernelParams<Scalar>& params,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& xs) {
  double min_sp = 0.0, mean_sp = 0.0;
  if (xs.size() >= 2) {
    min_sp = static_cast<double>(xs(1) - xs(0));
    for (Eigen::Index i = 1; i + 1 < xs.size(); ++i)
      min_sp = std::min(min_sp, static_cast<double>(xs(i + 1) - xs(i)));
    mean_sp = static_cast<double>(xs(xs.size() - 1) - xs(0)) /
              static_cast<double>(xs.size() - 1);
  }
  std::ostringstream os;
  os << "conditional_discrepancy: K_ss singular after jitter escalation"
     << " (psi=" << static_cast<double>(params.psi)
     << ", supports=" << xs.size() << ", min spacing=" << min_sp
     << ", mean spacing=" << mean_sp << ")";
  return os.str();
}

}  // namespace detail

// delta_s = K_ss (K_ss + sigma2_eps I)^{-1} z_s at the supporting locations,
// delta_r = K_rs (K_ss + sigma2_eps I)^{-1} z_s at the remaining ones.
// All solves go through symmetric factorizations; no explicit inverses.
template <typename DerivedZ, typename DerivedL>
DiscrepancyEstimate<typename DerivedL::Scalar> conditional_discrepancy(
    const Eigen::MatrixBase<DerivedZ>& residuals_s,
    const Eigen::MatrixBase<DerivedL>& locations,
    const SupportSelection& support,
    const KernelParams<typename DerivedL::Scalar>& params,
    typename DerivedL::Scalar sigma2_eps) {
  using Scalar = typename DerivedL::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Vec z_s = residuals_s.derived();
  if (static_cast<std::size_t>(z_s.size()) != support.support_indices.size())
    throw ConfigError(
        "conditional_discrepancy: residuals_s length must match the support");
  if (!(sigma2_eps > Scalar(0)))
    throw ConfigError("conditional_discrepancy: sigma2_eps must be positive");
  const Vec xs = slice(locations, support.support_indices);
  const Vec xr = slice(locations, support.remaining_indices);

  DiscrepancyEstimate<Scalar> est;
  est.K_ss = kernel_matrix(xs, xs, params);
  est.K_z = est.K_ss;
  est.K_z.diagonal().array() += sigma2_eps;
  if (params.sigma2_d == Scalar(0)) {  // degenerate GP: no discrepancy
    est.delta_s = Vec::Zero(xs.size());
    est.delta_r = Vec::Zero(xr.size());
    est.penalty_quadform = Scalar(0);
    return est;
  }

  // conditioning guard: K_ss itself must admit a (jittered) factorization
  Eigen::LLT<Mat> llt_guard;
  if (!llt_with_jitter(llt_guard, est.K_ss, params.sigma2_d))
    throw NumericalError(detail::singular_kss_message(params, xs));

  Eigen::LLT<Mat> llt_z;
  if (!llt_with_jitter(llt_z, est.K_z, params.sigma2_d))
    throw NumericalError(detail::singular_kss_message(params, xs));
  const Vec alpha = llt_z.solve(z_s);
  est.delta_s = est.K_ss * alpha;
  est.delta_r = kernel_matrix(xr, xs, params) * alpha;
  // identity: delta_s' K_ss^{-1} delta_s = alpha' K_ss alpha = delta_s . alpha
  est.penalty_quadform = std::max(Scalar(0), est.delta_s.dot(alpha));
  return est;
}

// -1/2 * delta_s' K_ss^{-1} delta_s on log scale.
template <typename Scalar>
Scalar log_discrepancy_penalty(const DiscrepancyEstimate<Scalar>& est) {
  return Scalar(-0.5) * est.penalty_quadform;
}

// One draw from N(mean = delta merged into location order,
//                 cov  = K_tt - K_ts K_z^{-1} K_st).
template <typename DerivedL>
Eigen::Matrix<typename DerivedL::Scalar, Eigen::Dynamic, 1> gp_conditional_draw(
    const DiscrepancyEstimate<typename DerivedL::Scalar>& est,
    const Eigen::MatrixBase<DerivedL>& locations,
    const SupportSelection& support,
    const KernelParams<typename DerivedL::Scalar>& params,
    typename DerivedL::Scalar sigma2_eps, Rng& rng) {
  using Scalar = typename DerivedL::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  (void)sigma2_eps;  // noise already lives on est.K_z's diagonal
  const Eigen::Index n = locations.size();
  if (params.sigma2_d == Scalar(0)) return Vec::Zero(n);

  const Vec mean = merge_by_selection(support, est.delta_s, est.delta_r);
  const Vec xs = slice(locations, support.support_indices);
  const Mat k_ts = kernel_matrix(locations.derived(), xs, params);
  Eigen::LLT<Mat> llt_z;
  if (!llt_with_jitter(llt_z, est.K_z, params.sigma2_d))
    throw NumericalError(detail::singular_kss_message(params, xs));
  Mat cov = kernel_matrix(locations.derived(), locations.derived(), params) -
            k_ts * llt_z.solve(k_ts.transpose());
  cov = ((cov + cov.transpose()) * Scalar(0.5)).eval();  // symmetrize
  Eigen::LLT<Mat> llt_c;
  if (!llt_with_jitter(llt_c, cov, params.sigma2_d))
    throw NumericalError(
        "gp_conditional_draw: conditional covariance not positive "
        "semidefinite after symmetrization and jitter");
  Vec white(n);
  std::normal_distribution<Scalar> n01(Scalar(0), Scalar(1));
  for (Eigen::Index i = 0; i < n; ++i) white(i) = n01(rng);
  return mean + llt_c.matrixL() * white;
}

}  // namespace gpcal
