#pragma once

// Reference implementations the tests trust. Everything here is written
// independently of the library: plain loops, LU inverses instead of Cholesky
// solves, naive formulas. Slow is fine; these exist to catch the fast paths
// lying.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace oracle {

inline Eigen::MatrixXd kernel(const Eigen::VectorXd& xa, const Eigen::VectorXd& xb,
                              double psi, double sigma2_d) {
  Eigen::MatrixXd out(xa.size(), xb.size());
  for (Eigen::Index p = 0; p < xa.size(); ++p) {
    for (Eigen::Index q = 0; q < xb.size(); ++q) {
      const double d = (xa(p) - xb(q)) / psi;
      out(p, q) = sigma2_d * std::exp(-d * d);
    }
  }
  return out;
}

struct DenseRegression {
  Eigen::VectorXd delta_s;
  Eigen::VectorXd delta_r;
};

// Conditional mean of a noise-free GP observed through iid noise, computed
// with an explicit matrix inverse.
inline DenseRegression dense_gp_regression(const Eigen::VectorXd& locations,
                                           const std::vector<Eigen::Index>& support,
                                           const Eigen::VectorXd& z_s, double psi,
                                           double sigma2_d, double sigma2_eps) {
  const auto m = static_cast<Eigen::Index>(support.size());
  Eigen::VectorXd xs(m);
  for (Eigen::Index i = 0; i < m; ++i) xs(i) = locations(support[static_cast<std::size_t>(i)]);
  std::vector<Eigen::Index> remaining;
  for (Eigen::Index i = 0; i < locations.size(); ++i) {
    if (std::find(support.begin(), support.end(), i) == support.end()) {
      remaining.push_back(i);
    }
  }
  Eigen::VectorXd xr(static_cast<Eigen::Index>(remaining.size()));
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    xr(static_cast<Eigen::Index>(i)) = locations(remaining[i]);
  }

  const Eigen::MatrixXd k_ss = kernel(xs, xs, psi, sigma2_d);
  Eigen::MatrixXd k_z = k_ss;
  for (Eigen::Index i = 0; i < m; ++i) k_z(i, i) += sigma2_eps;
  const Eigen::MatrixXd k_z_inv = k_z.fullPivLu().inverse();

  DenseRegression out;
  out.delta_s = k_ss * (k_z_inv * z_s);
  out.delta_r = kernel(xr, xs, psi, sigma2_d) * (k_z_inv * z_s);
  return out;
}

// Full-sample discrepancy quadform evaluated blockwise: the supports-only
// term plus the Schur-complement term of the interpolated block. The Schur
// complement of a noise-free kernel is near singular, so it carries a tiny
// ridge; agreement with the supports-only shortcut is approximate by design.
inline double blocked_full_quadform(const Eigen::VectorXd& locations,
                                    const std::vector<Eigen::Index>& support,
                                    const Eigen::VectorXd& z_s, double psi,
                                    double sigma2_d, double sigma2_eps) {
  const DenseRegression reg =
      dense_gp_regression(locations, support, z_s, psi, sigma2_d, sigma2_eps);
  const auto m = static_cast<Eigen::Index>(support.size());
  Eigen::VectorXd xs(m);
  for (Eigen::Index i = 0; i < m; ++i) xs(i) = locations(support[static_cast<std::size_t>(i)]);
  std::vector<Eigen::Index> remaining;
  for (Eigen::Index i = 0; i < locations.size(); ++i) {
    if (std::find(support.begin(), support.end(), i) == support.end()) {
      remaining.push_back(i);
    }
  }
  Eigen::VectorXd xr(static_cast<Eigen::Index>(remaining.size()));
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    xr(static_cast<Eigen::Index>(i)) = locations(remaining[i]);
  }

  const Eigen::MatrixXd lam_ss = kernel(xs, xs, psi, sigma2_d);
  const Eigen::MatrixXd lam_rs = kernel(xr, xs, psi, sigma2_d);
  const Eigen::MatrixXd lam_rr = kernel(xr, xr, psi, sigma2_d);
  const Eigen::MatrixXd lam_ss_inv = lam_ss.fullPivLu().inverse();

  const double term_s = reg.delta_s.dot(lam_ss_inv * reg.delta_s);
  if (xr.size() == 0) return term_s;

  const Eigen::VectorXd interp = lam_rs * (lam_ss_inv * reg.delta_s);
  Eigen::MatrixXd schur = lam_rr - lam_rs * lam_ss_inv * lam_rs.transpose();
  const double ridge = 1e-8 * sigma2_d;
  for (Eigen::Index i = 0; i < schur.rows(); ++i) schur(i, i) += ridge;
  const Eigen::VectorXd gap = reg.delta_r - interp;
  const double term_r = gap.dot(schur.fullPivLu().solve(gap));
  return term_s + term_r;
}

// Weighted least squares through the normal equations.
inline Eigen::VectorXd wls_solve(const Eigen::MatrixXd& design,
                                 const Eigen::VectorXd& observations,
                                 const Eigen::VectorXd& weights) {
  const Eigen::MatrixXd wx = weights.asDiagonal() * design;
  const Eigen::MatrixXd normal = design.transpose() * wx;
  const Eigen::VectorXd rhs = design.transpose() * (weights.asDiagonal() * observations);
  return normal.fullPivLu().solve(rhs);
}

struct ConjugatePosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

// Flat-prior posterior of theta for y = X theta + N(0, sigma2 I).
inline ConjugatePosterior conjugate_linear_posterior(const Eigen::MatrixXd& design,
                                                     const Eigen::VectorXd& y,
                                                     double sigma2) {
  ConjugatePosterior post;
  const Eigen::MatrixXd normal = design.transpose() * design;
  post.cov = sigma2 * normal.fullPivLu().inverse();
  post.mean = normal.fullPivLu().solve(design.transpose() * y);
  return post;
}

inline double inverse_gamma_mean(double shape, double scale) {
  return scale / (shape - 1.0);
}

inline double inverse_gamma_variance(double shape, double scale) {
  return scale * scale / ((shape - 1.0) * (shape - 1.0) * (shape - 2.0));
}

// P(X <= x) for X ~ IG(shape, scale).
inline double inverse_gamma_cdf(double x, double shape, double scale) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_q(shape, scale / x);
}

// Type-7 quantile written against a copy of the definition.
inline double quantile_reference(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double h = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace oracle
