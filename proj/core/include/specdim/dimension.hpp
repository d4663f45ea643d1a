#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "specdim/space.hpp"

namespace specdim {

/// Log-log sample series: (scale, value) pairs with strictly increasing
/// positive scales and positive values.
struct ScaleSeries {
  std::vector<std::pair<double, double>> samples;
};

struct DimensionEstimate {
  double limsup_slope = 0;
  double liminf_slope = 0;
  std::size_t window = 0;
  std::pair<std::size_t, std::size_t> regime{0, 0};  // [first, last] indices
  std::vector<std::pair<double, double>> per_window_slopes;  // (anchor, slope)
  std::vector<double> r_grid;                 // asymptotic estimates only
  std::vector<double> per_r_estimates;        // limsup per r, same order
  bool converged = true;                      // per-r agreement diagnostic
  std::vector<std::pair<double, double>> series;  // raw (scale, value) data
};

struct SlopeConfig {
  std::size_t window = 3;
  // Regime as sample index range; {0,0} means the default upper half of the
  // series (at least window+1 samples).
  std::pair<std::size_t, std::size_t> regime{0, 0};
};

struct BoxConfig {
  double r_min = 0;        // 0: pick from the space's smallest spacing
  double r_max = 0;        // 0: quarter of R
  double R = 0;            // 0: the radius budget
  std::size_t window = 3;
  double grid_ratio = 2;   // successive radii differ by this factor
};

struct AsymptoticConfig {
  std::vector<double> r_grid{2, 4, 8};
  double R_min = 0;        // 0: 2 * max r in grid
  double R_max = 0;        // 0: the radius budget
  std::size_t window = 3;
  double agreement_tol = 0.1;
};

/// Windowed least-squares slopes of log value vs log scale. limsup_slope is
/// the max window slope over the regime, liminf_slope the min.
DimensionEstimate slope_limsup(const ScaleSeries& series,
                               const SlopeConfig& config = {});

/// Box dimension d0: packing counts of B(base, R) over a geometric r-grid,
/// slope of log nu_r against log(1/r).
DimensionEstimate box_dimension(const MetricMeasureSpace& space,
                                const BoxConfig& config = {});

/// Asymptotic dimension d_inf: for each fixed r in the grid, packing counts
/// of B(base, R) over dyadic R, slope against log R. The reported estimate
/// is the value at the smallest grid r; per-r values are exposed and checked
/// for agreement within agreement_tol.
DimensionEstimate asymptotic_dimension(const MetricMeasureSpace& space,
                                       const AsymptoticConfig& config = {});

/// Volume form of d_inf: slope of log ball volume against log R.
DimensionEstimate asymptotic_dimension_volume(const MetricMeasureSpace& space,
                                              const AsymptoticConfig& config = {});

struct BoundednessRow {
  double r;
  double beta1;  // inf of sampled ball volumes
  double beta2;  // sup
};

/// Empirical uniform-boundedness table over deterministically sampled centers
/// (every k-th point so that at most `center_sample` centers are used).
std::vector<BoundednessRow> uniform_bounded_check(
    const MetricMeasureSpace& space, const std::vector<double>& r_grid,
    std::size_t center_sample = 64);

/// Empirical volume doubling constant: sup of V(x,2r)/V(x,r) over sampled
/// centers and dyadic radii.
double doubling_constant(const MetricMeasureSpace& space,
                         std::size_t center_sample = 64);

}  // namespace specdim
