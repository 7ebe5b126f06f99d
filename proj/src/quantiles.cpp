#include "gpcal/report/quantiles.hpp"

#include <algorithm>
#include <cmath>

#include "gpcal/errors.hpp"

namespace gpcal {

namespace {

double interpolate_sorted(const std::vector<double>& sorted, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("quantile: probability outside [0, 1]");
  }
  const std::size_t n = sorted.size();
  if (n == 0) throw ConfigError("quantile: empty sample");
  if (n == 1) return sorted[0];
  const double h = static_cast<double>(n - 1) * p;
  const auto i = static_cast<std::size_t>(std::floor(h));
  if (i + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

}  // namespace

double quantile_type7(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return interpolate_sorted(values, p);
}

Eigen::VectorXd quantiles_type7(const Eigen::VectorXd& values,
                                const std::vector<double>& probabilities) {
  std::vector<double> sorted(values.data(), values.data() + values.size());
  std::sort(sorted.begin(), sorted.end());
  Eigen::VectorXd out(static_cast<Eigen::Index>(probabilities.size()));
  for (std::size_t j = 0; j < probabilities.size(); ++j) {
    out(static_cast<Eigen::Index>(j)) = interpolate_sorted(sorted, probabilities[j]);
  }
  return out;
}

}  // namespace gpcal
