#pragma once

#include <Eigen/Dense>
#include <functional>

namespace gpcal {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct BfgsSettings {
  double gradient_tol = 1e-8;   // max-norm of the gradient
  double objective_tol = 1e-10; // relative objective decrease per step
  int max_iterations = 500;
  double fd_step = 1e-6;        // relative central-difference step
};

struct OptimumReport {
  Eigen::VectorXd theta_hat;
  double objective = 0.0;      // minimized value (a negative log density)
  Eigen::MatrixXd hessian;     // central finite differences at theta_hat
  Eigen::MatrixXd laplace_cov; // hessian^{-1} when positive definite, else zeros
  bool converged = false;
  int iterations = 0;
};

// Central-difference gradient with per-component step rel_step*max(1, |x_i|).
Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x,
                            double rel_step);

// Central differences of fd_gradient, symmetrized.
Eigen::MatrixXd fd_hessian(const Objective& f, const Eigen::VectorXd& x,
                           double rel_step);

// BFGS with backtracking line search (Armijo, c1 = 1e-4, quadratic
// interpolation safeguarded to [0.1, 0.9] of the previous step). The
// inverse Hessian update is skipped when s'y is not safely positive. A line
// search failure reports the best point found with converged = false; a
// non-finite start throws. The Laplace covariance comes from a Cholesky
// solve of the finite-difference Hessian; if that is not positive definite
// the covariance is zeroed and converged is cleared.
OptimumReport bfgs_minimize(const Objective& f, const Eigen::VectorXd& theta0,
                            const BfgsSettings& settings = {});

}  // namespace gpcal
