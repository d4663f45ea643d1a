#include "specdim/roughiso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specdim {

namespace {

std::vector<PointRef> sample_points(const MetricMeasureSpace& X,
                                    std::size_t count) {
  std::size_t n = X.size();
  count = std::max<std::size_t>(2, std::min(count, n));
  std::vector<PointRef> pts;
  std::size_t stride = std::max<std::size_t>(1, n / count);
  for (std::size_t p = 0; p < n && pts.size() < count; p += stride)
    pts.push_back(p);
  return pts;
}

}  // namespace

RoughIsometryWitness verify_rough_isometry(const MetricMeasureSpace& X,
                                           const MetricMeasureSpace& Y,
                                           const PointMap& f,
                                           std::size_t sample_budget,
                                           const RoughIsometryCaps& caps) {
  RoughIsometryWitness w;
  std::size_t m = std::size_t(std::sqrt(double(2 * sample_budget))) + 1;
  auto pts = sample_points(X, m);

  // dilation from the extremal large-distance ratios
  double a = 1;
  std::pair<PointRef, PointRef> a_pair{0, 0};
  std::vector<std::tuple<PointRef, PointRef, double, double>> pairs;
  double dmax = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double dx = X.distance(pts[i], pts[j]);
      double dy = Y.distance(f(pts[i]), f(pts[j]));
      pairs.emplace_back(pts[i], pts[j], dx, dy);
      dmax = std::max(dmax, dx);
    }
  w.pairs_sampled = pairs.size();
  for (auto& [p, q, dx, dy] : pairs) {
    if (dx < dmax / 4 || dx <= 0) continue;  // small distances go into b
    double ratio = std::max(dy / dx, dy > 0 ? dx / dy : caps.a_max + 1);
    if (ratio > a) { a = ratio; a_pair = {p, q}; }
  }
  if (a > caps.a_max) {
    w.a = a;
    w.violations.push_back(a_pair);
    return w;
  }

  double b = 0;
  std::pair<PointRef, PointRef> b_pair{0, 0};
  for (auto& [p, q, dx, dy] : pairs) {
    double slack = std::max(dy - a * dx, dx / a - dy);
    if (slack > b) { b = slack; b_pair = {p, q}; }
  }
  if (b > caps.b_max) {
    w.a = a;
    w.b = b;
    w.violations.push_back(b_pair);
    return w;
  }

  // net constant over sampled Y points against the full image
  std::vector<PointRef> image;
  image.reserve(X.size());
  for (PointRef p = 0; p < X.size(); ++p) image.push_back(f(p));
  double eps = 0;
  std::pair<PointRef, PointRef> e_pair{0, 0};
  for (PointRef y : sample_points(Y, 512)) {
    double d = std::numeric_limits<double>::infinity();
    PointRef nearest = image.empty() ? 0 : image[0];
    for (PointRef im : image) {
      double dd = Y.distance(y, im);
      if (dd < d) { d = dd; nearest = im; }
    }
    if (d > eps) { eps = d; e_pair = {y, nearest}; }
  }
  if (eps > caps.eps_max) {
    w.a = a;
    w.b = b;
    w.eps = eps;
    w.violations.push_back(e_pair);
    return w;
  }

  w.ok = true;
  w.a = a;
  w.b = b;
  w.eps = eps;
  return w;
}

std::optional<std::pair<double, double>> verify_bilipschitz(
    const MetricMeasureSpace& X, const MetricMeasureSpace& Y,
    const PointMap& f, std::size_t sample_budget, double cap) {
  std::size_t m = std::size_t(std::sqrt(double(2 * sample_budget))) + 1;
  auto pts = sample_points(X, m);
  double c1 = std::numeric_limits<double>::infinity();
  double c2 = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double dx = X.distance(pts[i], pts[j]);
      if (dx <= 0) continue;
      double ratio = Y.distance(f(pts[i]), f(pts[j])) / dx;
      c1 = std::min(c1, ratio);
      c2 = std::max(c2, ratio);
    }
  if (c1 < 1 / cap || c2 > cap) return std::nullopt;
  return std::make_pair(c1, c2);
}

Discretization discretize(const MetricMeasureSpace& space, double eps,
                          double R) {
  if (!space.enumerable())
    throw std::logic_error("discretize: needs an enumerable space");
  if (eps > R)
    throw std::invalid_argument("discretize: eps must not exceed R");
  std::size_t n = space.size();

  std::vector<PointRef> net;
  for (PointRef p = 0; p < n; ++p) {
    bool ok = true;
    for (PointRef c : net)
      if (space.distance(p, c) < eps) { ok = false; break; }
    if (ok) net.push_back(p);
  }

  std::vector<std::tuple<int, int, double>> edges;
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      if (space.distance(net[i], net[j]) < 2 * R)
        edges.emplace_back(int(i), int(j), 1.0);

  std::vector<double> weights(net.size(), 0.0);
  for (PointRef p = 0; p < n; ++p) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < net.size(); ++i) {
      double d = space.distance(p, net[i]);
      if (d < bd) { bd = d; best = i; }
    }
    weights[best] += space.weight(p);
  }

  PointRef base = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.size(); ++i) {
    double d = space.distance(space.base_point(), net[i]);
    if (d < bd) { bd = d; base = i; }
  }

  Discretization out{
      MetricMeasureSpace::graph(net.size(), edges, std::move(weights), base,
                                space.radius_budget(), true,
                                "discretization of " + space.description()),
      std::move(net)};
  return out;
}

}  // namespace specdim
