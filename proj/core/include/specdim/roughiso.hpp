#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "specdim/space.hpp"

namespace specdim {

using PointMap = std::function<PointRef(PointRef)>;

struct RoughIsometryWitness {
  bool ok = false;
  double a = 1;    // dilation
  double b = 0;    // additive slack
  double eps = 0;  // net constant
  std::vector<std::pair<PointRef, PointRef>> violations;
  std::size_t pairs_sampled = 0;
};

struct RoughIsometryCaps {
  double a_max = 16;
  double b_max = 32;
  double eps_max = 32;
};

/// Fit the smallest (a, b, eps) making f a rough isometry over a
/// deterministic sample of point pairs; fails with the extremal pair when the
/// caps are exceeded.
RoughIsometryWitness verify_rough_isometry(const MetricMeasureSpace& X,
                                           const MetricMeasureSpace& Y,
                                           const PointMap& f,
                                           std::size_t sample_budget = 4096,
                                           const RoughIsometryCaps& caps = {});

/// Empirical bi-Lipschitz constants (c1, c2): extremal ratios
/// delta_Y(f a, f b) / delta_X(a, b) over sampled pairs. nullopt when the
/// ratios leave [1/cap, cap].
std::optional<std::pair<double, double>> verify_bilipschitz(
    const MetricMeasureSpace& X, const MetricMeasureSpace& Y,
    const PointMap& f, std::size_t sample_budget = 4096, double cap = 16);

/// Greedy eps-separated net of the space, edges between net points at
/// original distance < 2R, combinatorial path metric, Voronoi weights.
/// Returns the graph-backed space together with the net point indices.
struct Discretization {
  MetricMeasureSpace graph;
  std::vector<PointRef> net;  // net[i] = source point of graph vertex i
};
Discretization discretize(const MetricMeasureSpace& space, double eps,
                          double R);

}  // namespace specdim
