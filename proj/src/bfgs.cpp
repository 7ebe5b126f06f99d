#include "gpcal/opt/bfgs.hpp"

#include <cmath>
#include <limits>

#include "gpcal/errors.hpp"
#include "gpcal/log.hpp"

namespace gpcal {

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x,
                            double rel_step) {
  const Eigen::Index dim = x.size();
  Eigen::VectorXd grad(dim);
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x(i)));
    probe(i) = x(i) + h;
    const double fp = f(probe);
    probe(i) = x(i) - h;
    const double fm = f(probe);
    probe(i) = x(i);
    grad(i) = (fp - fm) / (2.0 * h);
  }
  return grad;
}

Eigen::MatrixXd fd_hessian(const Objective& f, const Eigen::VectorXd& x,
                           double rel_step) {
  const Eigen::Index dim = x.size();
  Eigen::MatrixXd hess(dim, dim);
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x(i)));
    probe(i) = x(i) + h;
    const Eigen::VectorXd gp = fd_gradient(f, probe, rel_step);
    probe(i) = x(i) - h;
    const Eigen::VectorXd gm = fd_gradient(f, probe, rel_step);
    probe(i) = x(i);
    hess.col(i) = (gp - gm) / (2.0 * h);
  }
  return 0.5 * (hess + hess.transpose());
}

OptimumReport bfgs_minimize(const Objective& f, const Eigen::VectorXd& theta0,
                            const BfgsSettings& settings) {
  const Eigen::Index dim = theta0.size();
  if (dim < 1) throw ConfigError("bfgs: empty parameter vector");

  Eigen::VectorXd x = theta0;
  double fx = f(x);
  if (!std::isfinite(fx)) {
    throw ConfigError("bfgs: objective is not finite at the starting point");
  }

  Eigen::MatrixXd inv_hess = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd grad = fd_gradient(f, x, settings.fd_step);

  OptimumReport report;
  report.converged = false;
  constexpr double c1 = 1e-4;

  for (int iter = 1; iter <= settings.max_iterations; ++iter) {
    report.iterations = iter;
    if (grad.cwiseAbs().maxCoeff() < settings.gradient_tol) {
      report.converged = true;
      report.iterations = iter - 1;
      break;
    }

    Eigen::VectorXd direction = -(inv_hess * grad);
    double slope = direction.dot(grad);
    if (!(slope < 0.0)) {
      // curvature information went bad; restart from steepest descent
      inv_hess.setIdentity();
      direction = -grad;
      slope = -grad.squaredNorm();
    }

    double step = 1.0;
    double f_new = std::numeric_limits<double>::infinity();
    Eigen::VectorXd x_new;
    bool found = false;
    for (int attempt = 0; attempt < 60; ++attempt) {
      x_new = x + step * direction;
      f_new = f(x_new);
      if (std::isfinite(f_new) && f_new <= fx + c1 * step * slope) {
        found = true;
        break;
      }
      // backtrack to the minimizer of the quadratic through phi(0), phi'(0)
      // and phi(step); exact in one shrink when the objective is quadratic
      double next = 0.5 * step;
      if (std::isfinite(f_new)) {
        const double denom = f_new - fx - step * slope;
        if (denom > 0.0) {
          const double t = -0.5 * slope * step * step / denom;
          if (std::isfinite(t)) {
            next = std::min(0.9 * step, std::max(0.1 * step, t));
          }
        }
      }
      step = next;
    }
    if (!found) {
      log::warn("bfgs: line search failed, returning best point so far");
      break;
    }

    const double decrease = fx - f_new;
    const Eigen::VectorXd grad_new = fd_gradient(f, x_new, settings.fd_step);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left =
          Eigen::MatrixXd::Identity(dim, dim) - rho * s * y.transpose();
      inv_hess = left * inv_hess * left.transpose() + rho * s * s.transpose();
    }
    x = x_new;
    fx = f_new;
    grad = grad_new;

    if (decrease < settings.objective_tol * std::max(1.0, std::abs(fx))) {
      report.converged = true;
      break;
    }
  }

  report.theta_hat = x;
  report.objective = fx;
  report.hessian = fd_hessian(f, x, settings.fd_step);
  Eigen::LLT<Eigen::MatrixXd> llt(report.hessian);
  if (llt.info() == Eigen::Success) {
    report.laplace_cov = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
  } else {
    log::warn("bfgs: hessian at the optimum is not positive definite");
    report.laplace_cov = Eigen::MatrixXd::Zero(dim, dim);
    report.converged = false;
  }
  return report;
}

}  // namespace gpcal
