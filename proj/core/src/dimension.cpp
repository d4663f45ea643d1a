#include "specdim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specdim/covering.hpp"

namespace specdim {

namespace {

double lsq_slope(const std::vector<std::pair<double, double>>& pts,
                 std::size_t first, std::size_t count) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = first; i < first + count; ++i) {
    double x = std::log(pts[i].first);
    double y = std::log(pts[i].second);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  double n = double(count);
  double denom = n * sxx - sx * sx;
  if (denom == 0) throw std::invalid_argument("slope_limsup: degenerate scales");
  return (n * sxy - sx * sy) / denom;
}

std::vector<double> dyadic_radii(double lo, double hi, double ratio,
                                 double offset) {
  std::vector<double> out;
  for (double R = lo; R <= hi * (1 + 1e-9); R *= ratio)
    out.push_back(R + offset);
  return out;
}

}  // namespace

DimensionEstimate slope_limsup(const ScaleSeries& series,
                               const SlopeConfig& config) {
  const auto& s = series.samples;
  if (config.window < 2)
    throw std::invalid_argument("slope_limsup: window must be >= 2");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].first <= 0 || s[i].second <= 0)
      throw std::invalid_argument("slope_limsup: scales and values must be positive");
    if (i > 0 && s[i].first <= s[i - 1].first)
      throw std::invalid_argument("slope_limsup: scales must be strictly increasing");
  }
  std::size_t n = s.size();
  std::size_t first = config.regime.first;
  std::size_t last = config.regime.second;
  if (first == 0 && last == 0) {
    last = n == 0 ? 0 : n - 1;
    first = n / 2;
    std::size_t need = config.window + 1;
    if (last + 1 >= need && last + 1 - first < need) first = last + 1 - need;
  }
  if (last >= n || first > last || last - first + 1 < config.window + 1)
    throw std::invalid_argument(
        "slope_limsup: regime needs at least window+1 samples");

  DimensionEstimate est;
  est.window = config.window;
  est.regime = {first, last};
  est.limsup_slope = -std::numeric_limits<double>::infinity();
  est.liminf_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i + config.window - 1 <= last; ++i) {
    double sl = lsq_slope(s, i, config.window);
    est.per_window_slopes.emplace_back(s[i + config.window - 1].first, sl);
    est.limsup_slope = std::max(est.limsup_slope, sl);
    est.liminf_slope = std::min(est.liminf_slope, sl);
  }
  return est;
}

DimensionEstimate box_dimension(const MetricMeasureSpace& space,
                                const BoxConfig& config) {
  if (!space.enumerable())
    throw std::logic_error("box_dimension: needs an enumerable space");
  double R = config.R > 0 ? config.R : space.radius_budget();
  // integer-metric spaces saturate below the unit spacing, which is exactly
  // the r -> 0 regime the definition asks about
  double r_max = config.r_max > 0 ? config.r_max
                                  : (space.integer_metric() ? 1.0 : R / 4);
  double r_min = config.r_min > 0 ? config.r_min : r_max / 16;
  if (r_min >= r_max)
    throw std::invalid_argument("box_dimension: r_min must be below r_max");
  if (config.grid_ratio <= 1)
    throw std::invalid_argument("box_dimension: grid_ratio must exceed 1");

  auto region = ball_points(space, space.base_point(), R);
  ScaleSeries series;
  for (double r = r_max; r >= r_min * (1 - 1e-9); r /= config.grid_ratio)
    series.samples.emplace_back(1.0 / r,
                                double(packing_number(space, region, r)));
  std::sort(series.samples.begin(), series.samples.end());
  SlopeConfig sc;
  sc.window = config.window;
  auto est = slope_limsup(series, sc);
  est.series = series.samples;
  return est;
}

DimensionEstimate asymptotic_dimension(const MetricMeasureSpace& space,
                                       const AsymptoticConfig& config) {
  if (!space.enumerable())
    throw std::logic_error("asymptotic_dimension: needs an enumerable space");
  if (config.r_grid.empty())
    throw std::invalid_argument("asymptotic_dimension: empty r grid");
  double R_max = config.R_max > 0 ? config.R_max : space.radius_budget();
  double r_low = *std::min_element(config.r_grid.begin(), config.r_grid.end());
  double R_min = config.R_min > 0 ? config.R_min : 2 * r_low;
  if (R_max > space.radius_budget() * (1 + 1e-9))
    throw std::range_error("asymptotic_dimension: R_max exceeds the radius budget");
  double offset = space.integer_metric() ? 0.5 : 0.0;

  std::vector<double> r_sorted = config.r_grid;
  std::sort(r_sorted.begin(), r_sorted.end());
  DimensionEstimate est;
  est.r_grid = r_sorted;
  SlopeConfig sc;
  sc.window = config.window;
  for (std::size_t ri = 0; ri < r_sorted.size(); ++ri) {
    double r = r_sorted[ri];
    ScaleSeries series;
    for (double R : dyadic_radii(R_min, R_max, 2.0, offset)) {
      auto region = ball_points(space, space.base_point(), R);
      series.samples.emplace_back(R, double(packing_number(space, region, r)));
    }
    DimensionEstimate sub = slope_limsup(series, sc);
    est.per_r_estimates.push_back(sub.limsup_slope);
    if (ri == 0) {
      est.limsup_slope = sub.limsup_slope;
      est.liminf_slope = sub.liminf_slope;
      est.window = sub.window;
      est.regime = sub.regime;
      est.per_window_slopes = sub.per_window_slopes;
      est.series = series.samples;
    }
  }
  auto [mn, mx] = std::minmax_element(est.per_r_estimates.begin(),
                                      est.per_r_estimates.end());
  est.converged = (*mx - *mn) <= config.agreement_tol;
  return est;
}

DimensionEstimate asymptotic_dimension_volume(const MetricMeasureSpace& space,
                                              const AsymptoticConfig& config) {
  double budget = space.enumerable() ? space.radius_budget() : space.horizon();
  double R_max = config.R_max > 0 ? config.R_max : budget;
  double R_min = config.R_min > 0 ? config.R_min : 4;
  if (R_max > budget * (1 + 1e-9))
    throw std::range_error(
        "asymptotic_dimension_volume: R_max exceeds the space's range");
  double offset =
      space.enumerable() && space.integer_metric() ? 0.5 : 0.0;
  ScaleSeries series;
  for (double R : dyadic_radii(R_min, R_max, 2.0, offset)) {
    double v = space.enumerable()
                   ? ball_volume(space, space.base_point(), R)
                   : ball_volume(space, R);
    if (v > 0) series.samples.emplace_back(R, v);
  }
  SlopeConfig sc;
  sc.window = config.window;
  auto est = slope_limsup(series, sc);
  est.series = series.samples;
  return est;
}

std::vector<BoundednessRow> uniform_bounded_check(
    const MetricMeasureSpace& space, const std::vector<double>& r_grid,
    std::size_t center_sample) {
  if (!space.enumerable())
    throw std::logic_error("uniform_bounded_check: needs an enumerable space");
  std::size_t n = space.size();
  std::size_t stride = std::max<std::size_t>(1, n / std::max<std::size_t>(1, center_sample));
  std::vector<BoundednessRow> rows;
  for (double r : r_grid) {
    BoundednessRow row{r, std::numeric_limits<double>::infinity(), 0};
    for (std::size_t p = 0; p < n; p += stride) {
      double v = ball_volume(space, p, r);
      row.beta1 = std::min(row.beta1, v);
      row.beta2 = std::max(row.beta2, v);
    }
    rows.push_back(row);
  }
  return rows;
}

double doubling_constant(const MetricMeasureSpace& space,
                         std::size_t center_sample) {
  double sup = 0;
  if (space.enumerable()) {
    std::size_t n = space.size();
    std::size_t stride =
        std::max<std::size_t>(1, n / std::max<std::size_t>(1, center_sample));
    double offset = space.integer_metric() ? 0.5 : 0.0;
    for (double r = 1; 2 * r <= space.radius_budget(); r *= 2) {
      for (std::size_t p = 0; p < n; p += stride) {
        double v1 = ball_volume(space, p, r + offset);
        double v2 = ball_volume(space, p, 2 * r + offset);
        if (v1 > 0) sup = std::max(sup, v2 / v1);
      }
    }
  } else {
    for (double R = 2; 2 * R <= space.horizon(); R *= 2) {
      double v1 = ball_volume(space, R);
      double v2 = ball_volume(space, 2 * R);
      if (v1 > 0) sup = std::max(sup, v2 / v1);
    }
  }
  return sup;
}

}  // namespace specdim
