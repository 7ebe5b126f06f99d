#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gpcal/rng.hpp"

namespace gpcal {

// Partition of a stream's location indices into supporting points (where the
// GP discrepancy is conditioned) and the remaining points (interpolated).
struct SupportSelection {
  std::vector<Eigen::Index> support_indices;    // sorted ascending
  std::vector<Eigen::Index> remaining_indices;  // complement, sorted ascending
  double grid_offset = 0.0;                     // randomization record
};

struct PsiBounds {
  double lower;
  double upper;
};

// upper = max(t) - min(t); lower = 2/3 of the mean consecutive spacing of the
// supporting points. Proposals outside these bounds are rejected outright.
PsiBounds psi_truncation_bounds(const Eigen::VectorXd& locations,
                                const SupportSelection& support);

// Lays a grid of spacing 3*psi/2 with a random offset over the location range,
// maps each node to its nearest observation, deduplicates while keeping two
// observations between supports where data density permits, and shrinks the
// spacing until at least min(5, n) supports result.
SupportSelection select_supporting_points(const Eigen::VectorXd& locations,
                                          double psi, Rng& rng);

namespace detail {

// Nodes lo+offset+k*spacing for k = 0, 1, ... while the node stays <= hi.
std::vector<double> support_grid(double lo, double hi, double spacing,
                                 double offset);

// Index of the location nearest to x; ties resolve to the lower index.
Eigen::Index nearest_index(const Eigen::VectorXd& sorted_locations, double x);

// Nearest-observation mapping with deduplication: when a node's nearest
// observation collides with or crowds an already chosen one, it advances to
// the next index that keeps `index_gap` between consecutive supports; nodes
// that would run past the end are dropped.
std::vector<Eigen::Index> map_nodes(const Eigen::VectorXd& sorted_locations,
                                    const std::vector<double>& nodes,
                                    Eigen::Index index_gap);

}  // namespace detail

}  // namespace gpcal
