#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace specdim {

/// Index of a point within an enumerable space's enumeration.
using PointRef = std::size_t;

enum class SpaceKind { Enumerable, AnalyticProfile };

/// Warped half-cylinder (1,inf) x A with metric dx^2 + f(x)^2 dw^2 and
/// volume form f(x)^{N-1} dx dw.
struct EndProfile {
  int local_dim = 2;                          // N
  double cross_section = 0.0;                 // measure of the (N-1)-sphere slice
  std::function<double(double)> warp;         // f on [1, inf)
  std::function<double(double)> log_volume;   // log V(R), R > 1
  double horizon = 0.0;                       // largest admissible R
};

/// A metric-measure space: either an enumerable point set with a distance
/// oracle and point weights, or an analytic volume profile for a cylindrical
/// end. Immutable after construction; all oracles are pure and safe for
/// unsynchronized concurrent use.
class MetricMeasureSpace {
 public:
  SpaceKind kind() const;
  bool enumerable() const { return kind() == SpaceKind::Enumerable; }
  const std::string& description() const;

  // Enumerable oracles. Throw std::logic_error on analytic spaces.
  std::size_t size() const;
  double distance(PointRef a, PointRef b) const;
  double weight(PointRef p) const;
  PointRef base_point() const;
  /// Points are only enumerated out to this distance from the base point;
  /// balls with R above the budget may be clipped.
  double radius_budget() const;
  /// True when all pairwise distances are integers (half-integer radii
  /// recommended to avoid boundary ties).
  bool integer_metric() const;
  /// Coordinates of a point, when the space is coordinate-backed (else empty).
  std::vector<double> coordinates(PointRef p) const;

  // Analytic oracle. Throws std::logic_error on enumerable spaces.
  double volume_profile(double R) const;
  double horizon() const;

  // Factories used by the catalogue builders.
  enum class CoordMetric { Euclidean, L1, Linf };
  static MetricMeasureSpace coords(std::vector<std::vector<double>> pts,
                                   CoordMetric metric,
                                   std::vector<double> weights, PointRef base,
                                   double budget, bool integer_metric,
                                   std::string desc);
  static MetricMeasureSpace torus(int d, int side, std::string desc);
  static MetricMeasureSpace graph(
      std::size_t n, const std::vector<std::tuple<int, int, double>>& edges,
      std::vector<double> weights, PointRef base, double budget,
      bool integer_metric, std::string desc);
  static MetricMeasureSpace product(std::vector<MetricMeasureSpace> factors,
                                    std::string desc);
  static MetricMeasureSpace disjoint_union(std::vector<MetricMeasureSpace> parts,
                                           double bridge, std::string desc);
  static MetricMeasureSpace analytic(std::function<double(double)> log_volume,
                                     double horizon, std::string desc);

  /// Graph adjacency, when graph-backed (else empty).
  const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency()
      const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit MetricMeasureSpace(std::shared_ptr<const Impl> impl);
};

/// Points of the open ball B(center, R): exactly those p with
/// distance(center, p) < R, in ascending index order.
std::vector<PointRef> ball_points(const MetricMeasureSpace& space,
                                  PointRef center, double R);

/// Measure of the open ball: sum of point weights (enumerable) or the
/// analytic profile V(R).
double ball_volume(const MetricMeasureSpace& space, PointRef center, double R);

/// Analytic-profile ball volume around the end's origin.
double ball_volume(const MetricMeasureSpace& space, double R);

}  // namespace specdim
