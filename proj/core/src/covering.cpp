#include "specdim/covering.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace specdim {

std::size_t packing_number(const MetricMeasureSpace& space,
                           const std::vector<PointRef>& region, double r) {
  std::vector<PointRef> accepted;
  for (PointRef p : region) {
    bool ok = true;
    // most recent centers first: on spatially sorted enumerations the
    // rejecting center is almost always a recent one
    for (auto it = accepted.rbegin(); it != accepted.rend(); ++it)
      if (space.distance(p, *it) < 2 * r) { ok = false; break; }
    if (ok) accepted.push_back(p);
  }
  return accepted.size();
}

std::size_t covering_upper(const MetricMeasureSpace& space,
                           const std::vector<PointRef>& region, double r) {
  std::size_t n = region.size();
  std::vector<char> covered(n, 0);
  std::size_t remaining = n;
  std::size_t count = 0;
  while (remaining > 0) {
    std::size_t best = n;
    std::size_t best_gain = 0;
    for (std::size_t ci = 0; ci < n; ++ci) {
      std::size_t gain = 0;
      for (std::size_t pi = 0; pi < n; ++pi)
        if (!covered[pi] && space.distance(region[ci], region[pi]) < r)
          ++gain;
      if (gain > best_gain) { best_gain = gain; best = ci; }
    }
    if (best == n) break;  // isolated points can still cover themselves
    for (std::size_t pi = 0; pi < n; ++pi)
      if (!covered[pi] && space.distance(region[best], region[pi]) < r) {
        covered[pi] = 1;
        --remaining;
      }
    ++count;
  }
  return count;
}

namespace {

void branch(const std::vector<std::uint32_t>& masks, std::uint32_t uncovered,
            std::size_t used, std::size_t& best) {
  if (uncovered == 0) { best = std::min(best, used); return; }
  if (used + 1 >= best) return;
  // branch on the lowest uncovered point: some chosen ball must contain it
  std::uint32_t bit = uncovered & (~uncovered + 1);
  for (std::size_t ci = 0; ci < masks.size(); ++ci)
    if (masks[ci] & bit)
      branch(masks, uncovered & ~masks[ci], used + 1, best);
}

}  // namespace

std::size_t covering_exact(const MetricMeasureSpace& space,
                           const std::vector<PointRef>& region,
                           const std::vector<PointRef>& centers, double r) {
  if (region.empty()) return 0;
  if (region.size() > 24 || centers.size() > 24)
    throw std::length_error(
        "covering_exact: region exceeds the 24-point exhaustive budget; use "
        "packing_number for large regions");
  std::vector<std::uint32_t> masks(centers.size(), 0);
  for (std::size_t ci = 0; ci < centers.size(); ++ci)
    for (std::size_t pi = 0; pi < region.size(); ++pi)
      if (space.distance(centers[ci], region[pi]) < r)
        masks[ci] |= std::uint32_t(1) << pi;
  std::uint32_t all = region.size() == 32
                          ? ~std::uint32_t(0)
                          : (std::uint32_t(1) << region.size()) - 1;
  std::uint32_t reachable = 0;
  for (auto m : masks) reachable |= m;
  if (reachable != all)
    throw std::invalid_argument(
        "covering_exact: some region point lies in no candidate ball");
  std::size_t best = region.size() + 1;
  branch(masks, all, 0, best);
  return best;
}

std::size_t covering_exact(const MetricMeasureSpace& space,
                           const std::vector<PointRef>& region, double r) {
  return covering_exact(space, region, region, r);
}

CoveringCount covering_count(const MetricMeasureSpace& space,
                             const std::vector<PointRef>& region, double r,
                             bool exact) {
  CoveringCount c;
  c.r = r;
  c.nu = packing_number(space, region, r);
  c.n_upper = covering_upper(space, region, r);
  if (exact) c.n_exact = covering_exact(space, region, r);
  return c;
}

}  // namespace specdim
