#include "specdim/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace specdim {

namespace {

double get_param(const SpaceSpec& s, const std::string& key, double dflt) {
  auto it = s.params.find(key);
  return it == s.params.end() ? dflt : it->second;
}

double require_param(const SpaceSpec& s, const std::string& key) {
  auto it = s.params.find(key);
  if (it == s.params.end())
    throw std::invalid_argument(s.kind + ": missing parameter '" + key + "'");
  return it->second;
}

std::string get_sparam(const SpaceSpec& s, const std::string& key,
                       const std::string& dflt) {
  auto it = s.sparams.find(key);
  return it == s.sparams.end() ? dflt : it->second;
}

void check(bool ok, const std::string& kind, const std::string& msg) {
  if (!ok) throw std::invalid_argument(kind + ": " + msg);
}

PointRef find_base(const std::vector<std::vector<double>>& pts,
                   const std::vector<double>& origin) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] == origin) return i;
  // fall back to the point closest to the requested origin
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double d = 0;
    for (std::size_t k = 0; k < origin.size(); ++k)
      d += (pts[i][k] - origin[k]) * (pts[i][k] - origin[k]);
    if (d < bd) { bd = d; best = i; }
  }
  return best;
}

MetricMeasureSpace build_lattice(const SpaceSpec& s) {
  int d = int(require_param(s, "d"));
  check(d >= 1 && d <= 4, s.kind, "d must be in [1,4]");
  std::string metric = get_sparam(s, "metric", "graph");
  check(metric == "graph" || metric == "sup", s.kind,
        "metric must be 'graph' or 'sup'");
  int budget = int(get_param(s, "budget", 64));
  check(budget >= 1, s.kind, "budget must be >= 1");
  bool sup = metric == "sup";

  std::vector<std::vector<double>> pts;
  std::vector<double> cur(d, 0.0);
  // enumerate integer points with |x|_1 <= budget (graph) or |x|_inf (sup)
  std::vector<int> x(d, -budget);
  while (true) {
    long norm1 = 0;
    long ninf = 0;
    for (int i = 0; i < d; ++i) {
      norm1 += std::labs(x[i]);
      ninf = std::max(ninf, std::labs(long(x[i])));
    }
    if (sup ? (ninf <= budget) : (norm1 <= budget)) {
      std::vector<double> p(d);
      for (int i = 0; i < d; ++i) p[i] = x[i];
      pts.push_back(std::move(p));
    }
    int k = d - 1;
    while (k >= 0 && x[k] == budget) x[k--] = -budget;
    if (k < 0) break;
    ++x[k];
  }
  std::sort(pts.begin(), pts.end());
  PointRef base = find_base(pts, std::vector<double>(d, 0.0));
  std::vector<double> w(pts.size(), 1.0);
  return MetricMeasureSpace::coords(
      std::move(pts),
      sup ? MetricMeasureSpace::CoordMetric::Linf
          : MetricMeasureSpace::CoordMetric::L1,
      std::move(w), base, budget, true, s.canonical());
}

MetricMeasureSpace build_region_alpha(const SpaceSpec& s) {
  double alpha = require_param(s, "alpha");
  check(alpha > 0 && alpha <= 1, s.kind, "alpha must lie in (0,1]");
  double h = get_param(s, "resolution", 0.5);
  check(h > 0, s.kind, "resolution must be positive");
  double budget = get_param(s, "budget", 90);
  check(budget > 0, s.kind, "budget must be positive");

  std::vector<std::vector<double>> pts;
  for (double xv = 0; xv <= budget; xv += h) {
    double ymax = std::pow(xv, alpha);
    long jmax = long(std::floor(ymax / h));
    for (long j = -jmax; j <= jmax; ++j) {
      double yv = j * h;
      if (xv * xv + yv * yv <= budget * budget)
        pts.push_back({xv, yv});
    }
  }
  std::sort(pts.begin(), pts.end());
  PointRef base = find_base(pts, {0.0, 0.0});
  std::vector<double> w(pts.size(), h * h);
  return MetricMeasureSpace::coords(std::move(pts),
                                    MetricMeasureSpace::CoordMetric::Euclidean,
                                    std::move(w), base, budget, false,
                                    s.canonical());
}

MetricMeasureSpace build_cantor(const SpaceSpec& s) {
  int depth = int(require_param(s, "depth"));
  check(depth >= 1 && depth <= 16, s.kind, "depth must be in [1,16]");
  double scale = std::pow(3.0, -depth);
  std::vector<std::vector<double>> pts;
  std::size_t count = std::size_t(1) << depth;
  for (std::size_t k = 0; k < count; ++k) {
    long v = 0;
    long place = 1;
    for (int b = 0; b < depth; ++b) {
      if (k & (std::size_t(1) << b)) v += 2 * place;
      place *= 3;
    }
    pts.push_back({v * scale});
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> w(pts.size(), 1.0 / double(count));
  return MetricMeasureSpace::coords(std::move(pts),
                                    MetricMeasureSpace::CoordMetric::Euclidean,
                                    std::move(w), 0, 1.0, false, s.canonical());
}

MetricMeasureSpace build_disk_chain(const SpaceSpec& s) {
  int count = int(get_param(s, "count", 40));
  check(count >= 1, s.kind, "count must be >= 1");
  double h = get_param(s, "resolution", 1.0 / 64);
  check(h > 0 && h <= 0.25, s.kind, "resolution must lie in (0, 0.25]");
  std::vector<std::vector<double>> pts;
  long m = long(std::floor(0.25 / h));
  for (int n = -count; n <= count; ++n)
    for (long i = -m; i <= m; ++i)
      for (long j = -m; j <= m; ++j) {
        double dx = i * h, dy = j * h;
        if (dx * dx + dy * dy < 0.0625) pts.push_back({n + dx, dy});
      }
  std::sort(pts.begin(), pts.end());
  PointRef base = find_base(pts, {0.0, 0.0});
  std::vector<double> w(pts.size(), h * h);
  return MetricMeasureSpace::coords(std::move(pts),
                                    MetricMeasureSpace::CoordMetric::Euclidean,
                                    std::move(w), base, count + 0.25, false,
                                    s.canonical());
}

MetricMeasureSpace build_grid(const SpaceSpec& s) {
  int d = int(get_param(s, "d", 2));
  check(d >= 1 && d <= 3, s.kind, "d must be in [1,3]");
  double step = get_param(s, "step", 1.0 / 256);
  check(step > 0 && step <= 1, s.kind, "step must lie in (0,1]");
  long m = long(std::lround(1.0 / step));
  check(std::pow(double(m + 1), d) <= 2e6, s.kind, "grid too fine");
  std::vector<std::vector<double>> pts;
  std::vector<long> x(d, 0);
  while (true) {
    std::vector<double> p(d);
    for (int i = 0; i < d; ++i) p[i] = x[i] * step;
    pts.push_back(std::move(p));
    int k = d - 1;
    while (k >= 0 && x[k] == m) x[k--] = 0;
    if (k < 0) break;
    ++x[k];
  }
  std::sort(pts.begin(), pts.end());
  PointRef base = find_base(pts, std::vector<double>(d, 0.0));
  std::vector<double> w(pts.size(), std::pow(step, d));
  return MetricMeasureSpace::coords(std::move(pts),
                                    MetricMeasureSpace::CoordMetric::Euclidean,
                                    std::move(w), base, std::sqrt(double(d)),
                                    false, s.canonical());
}

MetricMeasureSpace build_line(const SpaceSpec& s) {
  int n = int(require_param(s, "n"));
  check(n >= 1, s.kind, "n must be >= 1");
  double spacing = get_param(s, "spacing", 1.0);
  check(spacing > 0, s.kind, "spacing must be positive");
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < n; ++i) pts.push_back({i * spacing});
  std::vector<double> w(pts.size(), 1.0);
  return MetricMeasureSpace::coords(std::move(pts),
                                    MetricMeasureSpace::CoordMetric::Euclidean,
                                    std::move(w), 0, (n - 1) * spacing,
                                    spacing == std::floor(spacing),
                                    s.canonical());
}

double sphere_measure(int N) {
  // measure of the unit (N-1)-sphere: 2 pi^{N/2} / Gamma(N/2)
  return 2.0 * std::pow(std::numbers::pi, N / 2.0) / std::tgamma(N / 2.0);
}

MetricMeasureSpace build_standard_end(const SpaceSpec& s) {
  double N = get_param(s, "N", 2);
  double D = require_param(s, "D");
  check(N >= 1, s.kind, "N must be >= 1");
  check(D >= N, s.kind, "D must be >= N");
  double omega = get_param(s, "omega", sphere_measure(int(N)));
  check(omega > 0, s.kind, "omega must be positive");
  double horizon = std::exp(690.0 / D);
  auto logv = [omega, D](double R) {
    if (R <= 1) return -std::numeric_limits<double>::infinity();
    // log( omega (R^D - 1) / D )
    return std::log(omega / D) + D * std::log(R) +
           std::log1p(-std::pow(R, -D));
  };
  return MetricMeasureSpace::analytic(logv, horizon, s.canonical());
}

MetricMeasureSpace build_davies_end(const SpaceSpec& s) {
  // f(r) = d/dr (r^2 log r); V(R) = omega * R^2 log R
  double omega = get_param(s, "omega", 2 * std::numbers::pi);
  auto logv = [omega](double R) {
    if (R <= 1) return -std::numeric_limits<double>::infinity();
    return std::log(omega) + 2 * std::log(R) + std::log(std::log(R));
  };
  return MetricMeasureSpace::analytic(logv, 1e150, s.canonical());
}

// ---- oscillating end -------------------------------------------------------

struct OscillatingTables {
  std::vector<double> a;  // a_0..a_9
  std::vector<double> b;  // b_0..b_4
  std::vector<double> c;  // c_0..c_4
  OscillatingTables() {
    a.assign(1, 0.0);
    for (int n = 1; n <= 9; ++n)
      a.push_back(a.back() + std::pow(2.0, std::pow(2.0, n)));
    b.assign(1, 0.0);
    for (int k = 1; k <= 4; ++k)
      b.push_back(b.back() +
                  std::sqrt(std::pow(2.0, std::pow(2.0, 2 * k + 1)) + 1.0));
    c.assign(1, 0.0);
    for (int k = 1; k <= 4; ++k)
      c.push_back(c.back() + (std::pow(2.0, std::pow(2.0, 2 * k)) - 1.0));
  }
};

const OscillatingTables& osc() {
  static const OscillatingTables t;
  return t;
}

// integral of f over one branch segment [lo, hi], exact antiderivatives
double osc_segment_integral(int seg, double lo, double hi) {
  const auto& T = osc();
  if (hi <= lo) return 0.0;
  if (seg == 0)  // sqrt branch on [1, a1]
    return (std::pow(hi, 1.5) - std::pow(lo, 1.5)) * (2.0 / 3.0);
  if (seg % 2 == 1) {  // linear branch on [a_{2n-1}, a_{2n}], seg = 2n-1
    int n = (seg + 1) / 2;
    double C = 2 + T.b[n - 1] + T.c[n - 1];
    double A = T.a[2 * n - 1];
    return C * (hi - lo) + ((hi - A) * (hi - A) - (lo - A) * (lo - A)) / 2.0;
  }
  int n = seg / 2;  // sqrt branch on [a_{2n}, a_{2n+1}]
  double C = 2 + T.b[n - 1] + T.c[n];
  double A = T.a[2 * n];
  return C * (hi - lo) +
         (std::pow(hi - A + 1, 1.5) - std::pow(lo - A + 1, 1.5)) * (2.0 / 3.0);
}

MetricMeasureSpace build_oscillating_end(const SpaceSpec& s) {
  const auto& T = osc();
  double horizon = T.a[9];
  auto logv = [](double R) {
    const auto& T = osc();
    if (R <= 1) return -std::numeric_limits<double>::infinity();
    double total = 0.0;
    double lo = 1.0;
    // accumulate branch integrals from the top down would need the edges
    // first; magnitudes fit in double below the horizon, so sum ascending.
    for (int seg = 0; seg <= 8; ++seg) {
      double edge_lo = seg == 0 ? 1.0 : T.a[seg];
      double edge_hi = T.a[seg + 1];
      if (R <= edge_lo) break;
      total += osc_segment_integral(seg, std::max(lo, edge_lo),
                                    std::min(R, edge_hi));
      if (R <= edge_hi) break;
    }
    return std::log(total);
  };
  return MetricMeasureSpace::analytic(logv, horizon, s.canonical());
}

MetricMeasureSpace build_torus(const SpaceSpec& s) {
  int d = int(require_param(s, "d"));
  int side = int(require_param(s, "side"));
  check(d >= 1 && d <= 3, s.kind, "d must be in [1,3]");
  check(side >= 3, s.kind, "side must be >= 3");
  check(std::pow(double(side), d) <= (1 << 24), s.kind, "torus too large");
  return MetricMeasureSpace::torus(d, side, s.canonical());
}

MetricMeasureSpace build_graph(const SpaceSpec& s) {
  check(!s.edges.empty(), s.kind, "edge list required");
  std::size_t n = 0;
  for (auto& [i, j, w] : s.edges) {
    check(i >= 0 && j >= 0, s.kind, "vertex ids must be non-negative");
    check(w > 0, s.kind, "edge weights must be positive");
    n = std::max(n, std::size_t(std::max(i, j)) + 1);
  }
  std::vector<double> w = s.vertex_weights;
  if (!w.empty()) {
    check(w.size() == n, s.kind, "vertex_weights size mismatch");
    for (double x : w) check(x > 0, s.kind, "vertex weights must be positive");
  }
  return MetricMeasureSpace::graph(n, s.edges, std::move(w),
                                   PointRef(get_param(s, "base", 0)), 1e18,
                                   false, s.canonical());
}

}  // namespace

double oscillating_f(double x) {
  const auto& T = osc();
  if (x < 1) throw std::domain_error("oscillating_f requires x >= 1");
  if (x > T.a[9])
    throw std::range_error("oscillating_f: x beyond the horizon a_9 = " +
                           std::to_string(T.a[9]));
  if (x <= T.a[1]) return std::sqrt(x);
  for (int n = 1; n <= 4; ++n) {
    if (x <= T.a[2 * n])
      return 2 + T.b[n - 1] + T.c[n - 1] + (x - T.a[2 * n - 1]);
    if (x <= T.a[2 * n + 1])
      return 2 + T.b[n - 1] + T.c[n] + std::sqrt(x - T.a[2 * n] + 1);
  }
  throw std::range_error("oscillating_f: unreachable");
}

const std::vector<double>& oscillating_breakpoints() { return osc().a; }

double model_ball_volume(double curvature, int n, double r) {
  if (n < 1) throw std::domain_error("model_ball_volume requires n >= 1");
  if (r <= 0) throw std::domain_error("model_ball_volume requires r > 0");
  if (curvature > 0 && r >= std::numbers::pi / std::sqrt(curvature))
    throw std::domain_error(
        "model_ball_volume: r must be below pi/sqrt(curvature)");
  auto S = [curvature](double t) {
    if (curvature < 0) {
      double s = std::sqrt(-curvature);
      return std::sinh(t * s) / s;
    }
    if (curvature > 0) {
      double s = std::sqrt(curvature);
      return std::sin(t * s) / s;
    }
    return t;
  };
  // composite Simpson on S(t)^{n-1}
  const int panels = 1 << 12;
  double hstep = r / panels;
  double acc = std::pow(S(0.0), n - 1) + std::pow(S(r), n - 1);
  for (int i = 1; i < panels; ++i)
    acc += (i % 2 ? 4.0 : 2.0) * std::pow(S(i * hstep), n - 1);
  double integral = acc * hstep / 3.0;
  double cn = n * std::pow(std::numbers::pi, n / 2.0) /
              std::tgamma(n / 2.0 + 1.0);
  return cn * integral;
}

std::string SpaceSpec::canonical() const {
  std::ostringstream os;
  os << kind << "{";
  for (auto& [k, v] : params) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << k << "=" << buf << ";";
  }
  for (auto& [k, v] : sparams) os << k << "=" << v << ";";
  if (!edges.empty()) {
    os << "edges=[";
    for (auto& [i, j, w] : edges) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", w);
      os << i << "," << j << "," << buf << ";";
    }
    os << "];";
  }
  if (!vertex_weights.empty()) {
    os << "vw=[";
    for (double w : vertex_weights) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", w);
      os << buf << ";";
    }
    os << "];";
  }
  if (!children.empty()) {
    os << "children=[";
    for (auto& c : children) os << c.canonical() << ";";
    os << "];";
  }
  os << "}";
  return os.str();
}

std::uint64_t spec_hash(const SpaceSpec& spec) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : spec.canonical()) {
    h ^= std::uint64_t(static_cast<unsigned char>(c));
    h *= 1099511628211ull;
  }
  return h;
}

SpaceSpec parse_space_tag(const std::string& tag) {
  SpaceSpec s;
  auto colon = tag.find(':');
  s.kind = tag.substr(0, colon);
  if (colon == std::string::npos) return s;
  std::string rest = tag.substr(colon + 1);
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("space tag: expected key=value, got '" +
                                  item + "'");
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    char* end = nullptr;
    double num = std::strtod(val.c_str(), &end);
    if (end && *end == '\0' && !val.empty())
      s.params[key] = num;
    else
      s.sparams[key] = val;
  }
  return s;
}

namespace {
SpaceSpec spec_from_json(const nlohmann::json& j) {
  SpaceSpec s;
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("space config: object with 'kind' required");
  for (auto& [key, val] : j.items()) {
    if (key == "kind") {
      s.kind = val.get<std::string>();
    } else if (key == "params") {
      for (auto& [k, v] : val.items()) {
        if (v.is_number())
          s.params[k] = v.get<double>();
        else if (v.is_string())
          s.sparams[k] = v.get<std::string>();
        else
          throw std::invalid_argument("space config: param '" + k +
                                      "' must be number or string");
      }
    } else if (key == "children") {
      for (auto& c : val) s.children.push_back(spec_from_json(c));
    } else if (key == "edges") {
      for (auto& e : val) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3)
          throw std::invalid_argument("space config: edge must be [i,j] or [i,j,w]");
        double w = e.size() == 3 ? e[2].get<double>() : 1.0;
        s.edges.emplace_back(e[0].get<int>(), e[1].get<int>(), w);
      }
    } else if (key == "vertex_weights") {
      for (auto& w : val) s.vertex_weights.push_back(w.get<double>());
    } else {
      throw std::invalid_argument("space config: unknown key '" + key + "'");
    }
  }
  return s;
}
}  // namespace

SpaceSpec parse_space_json(const std::string& text) {
  return spec_from_json(nlohmann::json::parse(text));
}

MetricMeasureSpace build_space(const SpaceSpec& spec) {
  if (spec.kind == "lattice") return build_lattice(spec);
  if (spec.kind == "cycle_torus" || spec.kind == "torus")
    return build_torus(spec);
  if (spec.kind == "graph") return build_graph(spec);
  if (spec.kind == "region_alpha" || spec.kind == "region")
    return build_region_alpha(spec);
  if (spec.kind == "cantor") return build_cantor(spec);
  if (spec.kind == "grid") return build_grid(spec);
  if (spec.kind == "disk_chain") return build_disk_chain(spec);
  if (spec.kind == "line") return build_line(spec);
  if (spec.kind == "standard_end") return build_standard_end(spec);
  if (spec.kind == "davies_remark_end" || spec.kind == "davies_end")
    return build_davies_end(spec);
  if (spec.kind == "oscillating_end") return build_oscillating_end(spec);
  if (spec.kind == "union") {
    if (spec.children.size() < 2)
      throw std::invalid_argument("union: needs at least two children");
    std::vector<MetricMeasureSpace> parts;
    for (auto& c : spec.children) parts.push_back(build_space(c));
    double bridge = get_param(spec, "bridge", 4.0);
    return MetricMeasureSpace::disjoint_union(std::move(parts), bridge,
                                              spec.canonical());
  }
  if (spec.kind == "product") {
    if (spec.children.size() < 2)
      throw std::invalid_argument("product: needs at least two children");
    std::vector<MetricMeasureSpace> parts;
    for (auto& c : spec.children) parts.push_back(build_space(c));
    return MetricMeasureSpace::product(std::move(parts), spec.canonical());
  }
  throw std::invalid_argument("unknown space kind '" + spec.kind + "'");
}

}  // namespace specdim
