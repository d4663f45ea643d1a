#pragma once

#include <optional>
#include <vector>

#include "specdim/space.hpp"

namespace specdim {

/// Packing / covering counts of a region at scale r.
struct CoveringCount {
  double r = 0;
  std::size_t nu = 0;              // greedy maximal packing size
  std::size_t n_upper = 0;         // greedy covering size
  std::optional<std::size_t> n_exact;  // minimum cover, small regions only
};

/// Size of the greedy maximal r-packing of the region: scan points in
/// ascending index order and accept a center iff it lies at distance >= 2r
/// from every accepted center. Any maximal packing realizes the bracket
/// n_r >= nu_r >= n_2r, so the greedy one suffices.
std::size_t packing_number(const MetricMeasureSpace& space,
                           const std::vector<PointRef>& region, double r);

/// Greedy set-cover upper bound on n_r: repeatedly pick the region point
/// whose open r-ball covers the most uncovered region points (lowest index
/// wins ties).
std::size_t covering_upper(const MetricMeasureSpace& space,
                           const std::vector<PointRef>& region, double r);

/// Exact minimum number of open r-balls, centered at `centers`, covering
/// `region`, by branch and bound. Throws std::length_error above 24 points.
std::size_t covering_exact(const MetricMeasureSpace& space,
                           const std::vector<PointRef>& region,
                           const std::vector<PointRef>& centers, double r);

std::size_t covering_exact(const MetricMeasureSpace& space,
                           const std::vector<PointRef>& region, double r);

CoveringCount covering_count(const MetricMeasureSpace& space,
                             const std::vector<PointRef>& region, double r,
                             bool exact = false);

}  // namespace specdim
