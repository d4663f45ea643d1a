#include "specdim/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace specdim {

namespace {

struct GraphData {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  // Dijkstra rows, filled lazily.
  mutable std::vector<std::shared_ptr<const std::vector<double>>> rows;
  mutable std::mutex mu;

  const std::vector<double>& row(std::size_t s) const {
    {
      std::lock_guard<std::mutex> lk(mu);
      if (rows[s]) return *rows[s];
    }
    auto r = std::make_shared<std::vector<double>>(
        adj.size(), std::numeric_limits<double>::infinity());
    using QE = std::pair<double, std::size_t>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> q;
    (*r)[s] = 0.0;
    q.push({0.0, s});
    while (!q.empty()) {
      auto [d, u] = q.top();
      q.pop();
      if (d > (*r)[u]) continue;
      for (auto [v, w] : adj[u]) {
        double nd = d + w;
        if (nd < (*r)[v]) {
          (*r)[v] = nd;
          q.push({nd, v});
        }
      }
    }
    std::lock_guard<std::mutex> lk(mu);
    if (!rows[s]) rows[s] = r;
    return *rows[s];
  }
};

}  // namespace

struct MetricMeasureSpace::Impl {
  SpaceKind kind = SpaceKind::Enumerable;
  std::string desc;

  enum class Backend { Coords, Torus, Graph, Product, Union };
  Backend backend = Backend::Coords;

  // Coords
  std::vector<std::vector<double>> pts;
  CoordMetric metric = CoordMetric::Euclidean;

  // Torus
  int torus_d = 0;
  int torus_side = 0;

  // Graph
  std::shared_ptr<GraphData> graphd;

  // Product / Union
  std::vector<MetricMeasureSpace> children;
  std::vector<std::size_t> strides;           // product index decomposition
  std::vector<std::size_t> offsets;           // union component offsets
  double bridge = 0.0;

  std::vector<double> weights;
  PointRef base = 0;
  double budget = 0.0;
  bool integer = false;
  std::size_t n = 0;

  // Analytic
  std::function<double(double)> log_volume;
  double horizon = std::numeric_limits<double>::infinity();

  double dist(PointRef a, PointRef b) const {
    switch (backend) {
      case Backend::Coords: {
        const auto& p = pts[a];
        const auto& q = pts[b];
        double acc = 0.0;
        switch (metric) {
          case CoordMetric::Euclidean:
            for (std::size_t i = 0; i < p.size(); ++i)
              acc += (p[i] - q[i]) * (p[i] - q[i]);
            return std::sqrt(acc);
          case CoordMetric::L1:
            for (std::size_t i = 0; i < p.size(); ++i)
              acc += std::abs(p[i] - q[i]);
            return acc;
          case CoordMetric::Linf:
            for (std::size_t i = 0; i < p.size(); ++i)
              acc = std::max(acc, std::abs(p[i] - q[i]));
            return acc;
        }
        return acc;
      }
      case Backend::Torus: {
        std::size_t x = a, y = b;
        double acc = 0.0;
        for (int i = 0; i < torus_d; ++i) {
          long dx = std::labs(long(x % torus_side) - long(y % torus_side));
          acc += std::min(dx, torus_side - dx);
          x /= torus_side;
          y /= torus_side;
        }
        return acc;
      }
      case Backend::Graph:
        return graphd->row(a)[b];
      case Backend::Product: {
        double acc = 0.0;
        for (std::size_t i = 0; i < children.size(); ++i) {
          PointRef ai = (a / strides[i]) % children[i].size();
          PointRef bi = (b / strides[i]) % children[i].size();
          acc = std::max(acc, children[i].distance(ai, bi));
        }
        return acc;
      }
      case Backend::Union: {
        auto comp = [&](PointRef p) {
          std::size_t c = 0;
          while (c + 1 < offsets.size() && p >= offsets[c + 1]) ++c;
          return c;
        };
        std::size_t ca = comp(a), cb = comp(b);
        if (ca == cb) return children[ca].distance(a - offsets[ca], b - offsets[cb]);
        const auto& X = children[ca];
        const auto& Y = children[cb];
        return X.distance(a - offsets[ca], X.base_point()) + bridge +
               Y.distance(Y.base_point(), b - offsets[cb]);
      }
    }
    return 0.0;
  }
};

MetricMeasureSpace::MetricMeasureSpace(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

SpaceKind MetricMeasureSpace::kind() const { return impl_->kind; }
const std::string& MetricMeasureSpace::description() const { return impl_->desc; }

std::size_t MetricMeasureSpace::size() const {
  if (!enumerable()) throw std::logic_error("analytic space has no point enumeration");
  return impl_->n;
}

double MetricMeasureSpace::distance(PointRef a, PointRef b) const {
  if (!enumerable()) throw std::logic_error("analytic space has no distance oracle");
  return impl_->dist(a, b);
}

double MetricMeasureSpace::weight(PointRef p) const {
  if (!enumerable()) throw std::logic_error("analytic space has no point weights");
  return impl_->weights[p];
}

PointRef MetricMeasureSpace::base_point() const { return impl_->base; }
double MetricMeasureSpace::radius_budget() const { return impl_->budget; }
bool MetricMeasureSpace::integer_metric() const { return impl_->integer; }

std::vector<double> MetricMeasureSpace::coordinates(PointRef p) const {
  if (impl_->backend == Impl::Backend::Coords) return impl_->pts[p];
  return {};
}

double MetricMeasureSpace::volume_profile(double R) const {
  if (enumerable()) throw std::logic_error("enumerable space has no analytic profile");
  if (R <= 0) throw std::domain_error("volume profile requires R > 0");
  if (R > impl_->horizon)
    throw std::range_error("radius " + std::to_string(R) +
                           " beyond profile horizon " +
                           std::to_string(impl_->horizon));
  return std::exp(impl_->log_volume(R));
}

double MetricMeasureSpace::horizon() const { return impl_->horizon; }

const std::vector<std::vector<std::pair<std::size_t, double>>>&
MetricMeasureSpace::adjacency() const {
  static const std::vector<std::vector<std::pair<std::size_t, double>>> empty;
  if (impl_->backend != Impl::Backend::Graph) return empty;
  return impl_->graphd->adj;
}

MetricMeasureSpace MetricMeasureSpace::coords(
    std::vector<std::vector<double>> pts, CoordMetric metric,
    std::vector<double> weights, PointRef base, double budget,
    bool integer_metric, std::string desc) {
  auto impl = std::make_shared<Impl>();
  impl->backend = Impl::Backend::Coords;
  impl->n = pts.size();
  impl->pts = std::move(pts);
  impl->metric = metric;
  impl->weights = std::move(weights);
  impl->base = base;
  impl->budget = budget;
  impl->integer = integer_metric;
  impl->desc = std::move(desc);
  return MetricMeasureSpace(impl);
}

MetricMeasureSpace MetricMeasureSpace::torus(int d, int side, std::string desc) {
  auto impl = std::make_shared<Impl>();
  impl->backend = Impl::Backend::Torus;
  impl->torus_d = d;
  impl->torus_side = side;
  impl->n = 1;
  for (int i = 0; i < d; ++i) impl->n *= std::size_t(side);
  impl->weights.assign(impl->n, 1.0);
  impl->base = 0;
  impl->budget = side / 2.0;
  impl->integer = true;
  impl->desc = std::move(desc);
  return MetricMeasureSpace(impl);
}

MetricMeasureSpace MetricMeasureSpace::graph(
    std::size_t n, const std::vector<std::tuple<int, int, double>>& edges,
    std::vector<double> weights, PointRef base, double budget,
    bool integer_metric, std::string desc) {
  auto impl = std::make_shared<Impl>();
  impl->backend = Impl::Backend::Graph;
  impl->n = n;
  impl->graphd = std::make_shared<GraphData>();
  impl->graphd->adj.resize(n);
  impl->graphd->rows.resize(n);
  for (auto& [i, j, w] : edges) {
    if (w <= 0) throw std::invalid_argument("edge weight must be positive");
    impl->graphd->adj[i].push_back({std::size_t(j), w});
    impl->graphd->adj[j].push_back({std::size_t(i), w});
  }
  impl->weights = std::move(weights);
  if (impl->weights.empty()) impl->weights.assign(n, 1.0);
  impl->base = base;
  impl->budget = budget;
  impl->integer = integer_metric;
  impl->desc = std::move(desc);
  return MetricMeasureSpace(impl);
}

MetricMeasureSpace MetricMeasureSpace::product(
    std::vector<MetricMeasureSpace> factors, std::string desc) {
  auto impl = std::make_shared<Impl>();
  impl->backend = Impl::Backend::Product;
  impl->children = std::move(factors);
  impl->n = 1;
  impl->budget = std::numeric_limits<double>::infinity();
  impl->integer = true;
  impl->strides.resize(impl->children.size());
  for (std::size_t i = 0; i < impl->children.size(); ++i) {
    impl->strides[i] = impl->n;
    impl->n *= impl->children[i].size();
    impl->budget = std::min(impl->budget, impl->children[i].radius_budget());
    impl->integer = impl->integer && impl->children[i].integer_metric();
  }
  impl->weights.resize(impl->n);
  PointRef base = 0;
  for (std::size_t i = 0; i < impl->children.size(); ++i)
    base += impl->strides[i] * impl->children[i].base_point();
  impl->base = base;
  for (std::size_t p = 0; p < impl->n; ++p) {
    double w = 1.0;
    for (std::size_t i = 0; i < impl->children.size(); ++i)
      w *= impl->children[i].weight((p / impl->strides[i]) %
                                    impl->children[i].size());
    impl->weights[p] = w;
  }
  impl->desc = std::move(desc);
  return MetricMeasureSpace(impl);
}

MetricMeasureSpace MetricMeasureSpace::disjoint_union(
    std::vector<MetricMeasureSpace> parts, double bridge, std::string desc) {
  if (bridge <= 0) throw std::invalid_argument("bridge distance must be positive");
  auto impl = std::make_shared<Impl>();
  impl->backend = Impl::Backend::Union;
  impl->children = std::move(parts);
  impl->bridge = bridge;
  impl->n = 0;
  impl->integer = bridge == std::floor(bridge);
  impl->budget = std::numeric_limits<double>::infinity();
  for (auto& c : impl->children) {
    impl->offsets.push_back(impl->n);
    impl->n += c.size();
    impl->integer = impl->integer && c.integer_metric();
  }
  impl->budget = impl->children[0].radius_budget();
  for (std::size_t i = 1; i < impl->children.size(); ++i)
    impl->budget = std::min(impl->budget,
                            impl->children[i].radius_budget() + bridge);
  impl->weights.resize(impl->n);
  for (std::size_t i = 0; i < impl->children.size(); ++i)
    for (std::size_t p = 0; p < impl->children[i].size(); ++p)
      impl->weights[impl->offsets[i] + p] = impl->children[i].weight(p);
  impl->base = impl->children[0].base_point();
  impl->desc = std::move(desc);
  return MetricMeasureSpace(impl);
}

MetricMeasureSpace MetricMeasureSpace::analytic(
    std::function<double(double)> log_volume, double horizon, std::string desc) {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::AnalyticProfile;
  impl->log_volume = std::move(log_volume);
  impl->horizon = horizon;
  impl->desc = std::move(desc);
  return MetricMeasureSpace(impl);
}

std::vector<PointRef> ball_points(const MetricMeasureSpace& space,
                                  PointRef center, double R) {
  if (!space.enumerable())
    throw std::logic_error("ball_points: analytic space has no points");
  std::vector<PointRef> out;
  for (PointRef p = 0; p < space.size(); ++p)
    if (space.distance(center, p) < R) out.push_back(p);
  return out;
}

double ball_volume(const MetricMeasureSpace& space, PointRef center, double R) {
  if (R <= 0) throw std::domain_error("ball_volume requires R > 0");
  if (!space.enumerable()) return space.volume_profile(R);
  double v = 0.0;
  for (PointRef p = 0; p < space.size(); ++p)
    if (space.distance(center, p) < R) v += space.weight(p);
  return v;
}

double ball_volume(const MetricMeasureSpace& space, double R) {
  if (space.enumerable()) return ball_volume(space, space.base_point(), R);
  if (R <= 0) throw std::domain_error("ball_volume requires R > 0");
  return space.volume_profile(R);
}

}  // namespace specdim
