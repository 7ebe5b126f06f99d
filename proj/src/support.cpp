#include "gpcal/gp/support.hpp"

#include <algorithm>
#include <cmath>

#include "gpcal/errors.hpp"

namespace gpcal {

using Eigen::Index;

namespace detail {

std::vector<double> support_grid(double lo, double hi, double spacing,
                                 double offset) {
  std::vector<double> nodes;
  for (Index k = 0;; ++k) {
    const double node = lo + offset + static_cast<double>(k) * spacing;
    if (node > hi) break;
    nodes.push_back(node);
  }
  return nodes;
}

Index nearest_index(const Eigen::VectorXd& locs, double x) {
  const Index n = locs.size();
  const double* begin = locs.data();
  const double* it = std::lower_bound(begin, begin + n, x);
  if (it == begin) return 0;
  if (it == begin + n) return n - 1;
  const Index right = it - begin;
  const Index left = right - 1;
  // tie resolves to the lower index
  return (x - locs(left) <= locs(right) - x) ? left : right;
}

std::vector<Index> map_nodes(const Eigen::VectorXd& locs,
                             const std::vector<double>& nodes,
                             Index index_gap) {
  const Index n = locs.size();
  std::vector<Index> chosen;
  for (double node : nodes) {
    const Index idx = nearest_index(locs, node);
    const Index cand =
        chosen.empty() ? idx : std::max(idx, chosen.back() + index_gap);
    if (cand >= n) continue;  // density does not permit another support here
    chosen.push_back(cand);
  }
  return chosen;
}

}  // namespace detail

PsiBounds psi_truncation_bounds(const Eigen::VectorXd& locations,
                                const SupportSelection& support) {
  const Index n = locations.size();
  if (n < 2)
    throw ConfigError("psi_truncation_bounds: undefined for a single location");
  const double upper = locations(n - 1) - locations(0);
  const auto& s = support.support_indices;
  double lower = 0.0;
  if (s.size() >= 2) {
    // mean consecutive spacing telescopes to (last - first)/(count - 1)
    const double mean_spacing = (locations(s.back()) - locations(s.front())) /
                                static_cast<double>(s.size() - 1);
    lower = (2.0 / 3.0) * mean_spacing;
  }
  return {lower, upper};
}

static SupportSelection finish_selection(Index n, std::vector<Index> chosen,
                                         double offset) {
  SupportSelection sel;
  sel.support_indices = std::move(chosen);
  sel.grid_offset = offset;
  sel.remaining_indices.reserve(n - sel.support_indices.size());
  auto it = sel.support_indices.begin();
  for (Index i = 0; i < n; ++i) {
    if (it != sel.support_indices.end() && *it == i) {
      ++it;
    } else {
      sel.remaining_indices.push_back(i);
    }
  }
  return sel;
}

SupportSelection select_supporting_points(const Eigen::VectorXd& locations,
                                          double psi, Rng& rng) {
  const Index n = locations.size();
  if (n == 0)
    throw ConfigError("select_supporting_points: empty locations");
  if (!(psi > 0.0))
    throw ConfigError("select_supporting_points: psi must be positive");
  const Index min_count = std::min<Index>(5, n);
  if (n <= min_count) {
    std::vector<Index> all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    return finish_selection(n, std::move(all), 0.0);
  }
  // widest index gap (ideal: two observations between supports) that still
  // allows min_count supports
  Index gap = 3;
  while (gap > 1 && (n - 1) / gap + 1 < min_count) --gap;

  const double lo = locations(0);
  const double hi = locations(n - 1);
  double h = 1.5 * psi;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int attempt = 0; attempt < 200; ++attempt) {
    const double offset = unif(rng) * h;
    std::vector<Index> chosen;
    if (hi - lo <= h * static_cast<double>(4 * n)) {
      chosen = detail::map_nodes(locations,
                                 detail::support_grid(lo, hi, h, offset), gap);
    } else {
      // grid far denser than the data: every observation is some node's
      // nearest, so the mapping degenerates to an index stride of `gap`
      for (Index i = detail::nearest_index(locations, lo + offset); i < n;
           i += gap)
        chosen.push_back(i);
    }
    if (static_cast<Index>(chosen.size()) >= min_count)
      return finish_selection(n, std::move(chosen), offset);
    h *= 0.5;  // too few supports: shrink the grid and redraw the offset
  }
  // deterministic near-equispaced fallback (degenerate location sets)
  Index stride = std::max<Index>(1, (n - 1) / (min_count - 1));
  while (stride > 1 && (n - 1) / stride + 1 < min_count) --stride;
  std::vector<Index> chosen;
  for (Index i = 0; i < n; i += stride) chosen.push_back(i);
  return finish_selection(n, std::move(chosen), 0.0);
}

}  // namespace gpcal
