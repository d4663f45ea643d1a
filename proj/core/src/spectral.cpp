#include "specdim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <lapacke.h>

#include "specdim/dimension.hpp"

namespace specdim {

namespace {

constexpr double kZeroTol = 1e-10;

double total_volume(const MetricMeasureSpace& g) {
  double vol = 0;
  for (PointRef p = 0; p < g.size(); ++p) vol += g.weight(p);
  return vol;
}

std::vector<double> dense_eigenvalues(std::vector<double>& a, lapack_int n) {
  std::vector<double> w(n);
  lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', n, a.data(), n,
                                   w.data());
  if (info != 0)
    throw std::runtime_error("dense eigensolve failed, info = " +
                             std::to_string(info));
  return w;
}

ScaleSeries to_series(const std::vector<std::pair<double, double>>& pts) {
  ScaleSeries s;
  s.samples = pts;
  return s;
}

}  // namespace

WeightedSpectrum spectrum_dense(const MetricMeasureSpace& graph) {
  std::size_t n = graph.size();
  if (n > 4096)
    throw std::length_error(
        "spectrum_dense: size exceeds the dense budget of 4096; use "
        "spectrum_lanczos");
  const auto& adj = graph.adjacency();
  if (adj.empty())
    throw std::logic_error("spectrum_dense: needs a graph-backed space");
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double deg = 0;
    for (auto& [j, w] : adj[i]) {
      if (w < 0) throw std::domain_error("spectrum_dense: negative edge weight");
      a[i * n + j] = -w;
      deg += w;
    }
    a[i * n + i] = deg;
  }
  auto evals = dense_eigenvalues(a, lapack_int(n));
  double vol = total_volume(graph);
  WeightedSpectrum spec;
  spec.volume = vol;
  spec.source = "dense:" + graph.description();
  for (double l : evals)
    spec.entries.emplace_back(std::max(l, 0.0), 1.0 / vol);
  std::sort(spec.entries.begin(), spec.entries.end());
  spec.normalization = double(n) / vol;
  return spec;
}

WeightedSpectrum spectrum_torus(int d, int side) {
  if (d < 1 || d > 3) throw std::invalid_argument("spectrum_torus: d in [1,3]");
  if (side < 3) throw std::invalid_argument("spectrum_torus: side >= 3");
  std::vector<double> cyc(side);
  for (int k = 0; k < side; ++k)
    cyc[k] = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / side);
  std::vector<double> sums{0.0};
  for (int dim = 0; dim < d; ++dim) {
    std::vector<double> next;
    next.reserve(sums.size() * side);
    for (double s : sums)
      for (double c : cyc) next.push_back(s + c);
    sums = std::move(next);
  }
  std::sort(sums.begin(), sums.end());
  WeightedSpectrum spec;
  double n = double(sums.size());
  spec.volume = n;
  spec.normalization = 1.0;
  spec.source = "torus:d=" + std::to_string(d) + ",side=" + std::to_string(side);
  for (double l : sums) spec.entries.emplace_back(l, 1.0 / n);
  return spec;
}

WeightedSpectrum spectrum_lanczos(const MetricMeasureSpace& graph,
                                  const LanczosConfig& config) {
  std::size_t n = graph.size();
  const auto& adj = graph.adjacency();
  if (adj.empty())
    throw std::logic_error("spectrum_lanczos: needs a graph-backed space");
  int m = std::min<int>(config.steps, int(n));
  double vol = total_volume(graph);

  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < n; ++i) {
      double deg = 0, off = 0;
      for (auto& [j, w] : adj[i]) {
        deg += w;
        off += w * x[j];
      }
      y[i] = deg * x[i] - off;
    }
  };

  WeightedSpectrum spec;
  spec.volume = vol;
  spec.source = "lanczos:" + graph.description();
  for (int probe = 0; probe < config.probes; ++probe) {
    std::mt19937_64 rng(config.seed * 1000003ull + std::uint64_t(probe));
    std::vector<double> v(n), vprev(n, 0.0), w(n);
    for (auto& x : v) x = (rng() & 1) ? 1.0 : -1.0;
    double nrm = std::sqrt(double(n));
    for (auto& x : v) x /= nrm;

    std::vector<double> alpha, beta;
    std::vector<std::vector<double>> basis;
    for (int k = 0; k < m; ++k) {
      basis.push_back(v);
      apply(v, w);
      double a = 0;
      for (std::size_t i = 0; i < n; ++i) a += v[i] * w[i];
      alpha.push_back(a);
      for (std::size_t i = 0; i < n; ++i)
        w[i] -= a * v[i] + (k > 0 ? beta.back() * vprev[i] : 0.0);
      // full reorthogonalization keeps the quadrature nodes clean
      for (const auto& u : basis) {
        double dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += u[i] * w[i];
        for (std::size_t i = 0; i < n; ++i) w[i] -= dot * u[i];
      }
      double b = 0;
      for (double x : w) b += x * x;
      b = std::sqrt(b);
      if (b < 1e-14 || k == m - 1) break;
      beta.push_back(b);
      vprev = v;
      for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / b;
    }
    lapack_int steps = lapack_int(alpha.size());
    std::vector<double> diag = alpha;
    std::vector<double> off = beta;
    off.resize(steps > 0 ? steps - 1 : 0);
    std::vector<double> z(std::size_t(steps) * steps);
    lapack_int info = LAPACKE_dstev(LAPACK_ROW_MAJOR, 'V', steps, diag.data(),
                                    off.data(), z.data(), steps);
    if (info != 0)
      throw std::runtime_error("tridiagonal eigensolve failed");
    for (lapack_int k = 0; k < steps; ++k) {
      double tau = z[std::size_t(k)];  // first component of column k
      double weight = double(n) * tau * tau / (config.probes * vol);
      spec.entries.emplace_back(std::max(diag[k], 0.0), weight);
    }
  }
  std::sort(spec.entries.begin(), spec.entries.end());
  spec.normalization = 0;
  for (auto& [l, w] : spec.entries) spec.normalization += w;
  return spec;
}

double heat_trace(const WeightedSpectrum& spec, double t) {
  if (t <= 0) throw std::domain_error("heat_trace: t must be positive");
  double s = 0;
  for (auto& [l, w] : spec.entries) s += w * std::exp(-t * l);
  return s;
}

double heat_trace0(const WeightedSpectrum& spec, double t, double b0) {
  return heat_trace(spec, t) - b0;
}

double counting(const WeightedSpectrum& spec, double t) {
  if (t <= 0) throw std::domain_error("counting: t must be positive");
  double s = 0;
  for (auto& [l, w] : spec.entries) {
    if (l >= t) break;
    s += w;
  }
  return s;
}

double counting0(const WeightedSpectrum& spec, double t) {
  double thr = kZeroTol * spec.lambda_max();
  double s = 0;
  for (auto& [l, w] : spec.entries) {
    if (l >= t) break;
    if (l > thr) s += w;
  }
  return s;
}

double laplace_transform_check(const WeightedSpectrum& spec,
                               const std::vector<double>& t_grid) {
  // jumps of N: distinct eigenvalues with accumulated weight
  std::vector<std::pair<double, double>> jumps;
  for (auto& [l, w] : spec.entries) {
    if (!jumps.empty() && jumps.back().first == l)
      jumps.back().second += w;
    else
      jumps.emplace_back(l, w);
  }
  double worst = 0;
  for (double t : t_grid) {
    double theta = heat_trace(spec, t);
    double stieltjes = 0;
    for (auto& [l, w] : jumps) stieltjes += w * std::exp(-t * l);
    double denom = std::max(std::abs(theta), 1e-300);
    worst = std::max(worst, std::abs(theta - stieltjes) / denom);
  }
  return worst;
}

double kernel_weight(const WeightedSpectrum& spec, double zero_tol) {
  double thr = zero_tol * spec.lambda_max();
  double s = 0;
  for (auto& [l, w] : spec.entries) {
    if (l > thr) break;
    s += w;
  }
  return s;
}

BettiEstimate betti0(const std::vector<WeightedSpectrum>& exhaustion,
                     double zero_tol) {
  if (exhaustion.size() < 3)
    throw std::invalid_argument("betti0: needs at least 3 exhaustion entries");
  BettiEstimate est;
  std::vector<double> x;
  for (auto& spec : exhaustion) {
    est.per_entry.push_back(kernel_weight(spec, zero_tol));
    x.push_back(1.0 / spec.volume);
  }
  for (std::size_t i = 1; i < est.per_entry.size(); ++i)
    if (est.per_entry[i] > est.per_entry[i - 1] + 1e-15) est.monotone = false;
  // least squares w_zero = b0 + c / volume; report the intercept
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i]; sy += est.per_entry[i];
    sxx += x[i] * x[i]; sxy += x[i] * est.per_entry[i];
  }
  double c = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  est.b0 = (sy - c * sx) / n;
  return est;
}

namespace {

double spectral_gap(const WeightedSpectrum& spec) {
  double thr = kZeroTol * spec.lambda_max();
  for (auto& [l, w] : spec.entries)
    if (l > thr) return l;
  throw std::invalid_argument("spectrum has no positive eigenvalue");
}

struct NSForms {
  double alpha0, alpha0_lower, alpha0_prime;
  std::vector<std::pair<double, double>> counting_series, heat_series;
};

NSForms ns_forms(const WeightedSpectrum& spec, const NSConfig& config) {
  double gap = spectral_gap(spec);
  double c_lo = config.counting_t_min > 0 ? config.counting_t_min : 5 * gap;
  double c_hi = config.counting_t_max > 0 ? config.counting_t_max : 1.0;
  double h_lo = config.heat_t_min > 0 ? config.heat_t_min : 4.0;
  double h_hi = config.heat_t_max > 0 ? config.heat_t_max : 1.0 / gap;

  NSForms out{};
  for (double t = c_lo; t <= c_hi * (1 + 1e-9); t *= config.grid_ratio) {
    double v = counting0(spec, t);
    if (v > 0) out.counting_series.emplace_back(t, v);
  }
  if (out.counting_series.size() < config.window + 1)
    throw std::invalid_argument(
        "ns_numbers: counting regime [" + std::to_string(c_lo) + ", " +
        std::to_string(c_hi) +
        "] holds too few usable samples; the approximant saturates below t "
        "of about 5x the spectral gap");
  SlopeConfig sc;
  sc.window = config.window;
  sc.regime = {0, out.counting_series.size() - 1};
  auto cest = slope_limsup(to_series(out.counting_series), sc);
  out.alpha0 = 2 * cest.limsup_slope;
  out.alpha0_lower = 2 * cest.liminf_slope;

  for (double t = h_lo; t <= h_hi * (1 + 1e-9); t *= config.grid_ratio) {
    double v = heat_trace0(spec, t, config.b0);
    if (v > 0) out.heat_series.emplace_back(t, v);
  }
  if (out.heat_series.size() < config.window + 1)
    throw std::invalid_argument(
        "ns_numbers: heat regime [" + std::to_string(h_lo) + ", " +
        std::to_string(h_hi) +
        "] holds too few usable samples; valid t ends near 1/gap");
  sc.regime = {0, out.heat_series.size() - 1};
  auto hest = slope_limsup(to_series(out.heat_series), sc);
  out.alpha0_prime = -2 * hest.liminf_slope;
  return out;
}

}  // namespace

NSEstimate ns_numbers(const std::vector<WeightedSpectrum>& exhaustion,
                      const NSConfig& config) {
  if (exhaustion.empty())
    throw std::invalid_argument("ns_numbers: empty exhaustion");
  NSEstimate est;
  est.b0 = config.b0;
  std::vector<double> alphas;
  for (auto& spec : exhaustion) {
    try {
      alphas.push_back(ns_forms(spec, config).alpha0);
    } catch (const std::invalid_argument&) {
      // smaller entries may saturate; only the largest entry is mandatory
    }
  }
  auto forms = ns_forms(exhaustion.back(), config);
  est.alpha0 = forms.alpha0;
  est.alpha0_lower = forms.alpha0_lower;
  est.alpha0_prime = forms.alpha0_prime;
  est.counting_series = std::move(forms.counting_series);
  est.heat_series = std::move(forms.heat_series);
  if (alphas.size() > 1) {
    auto [mn, mx] = std::minmax_element(alphas.begin(), alphas.end());
    est.cross_entry_spread = *mx - *mn;
  }
  return est;
}

namespace {

// grid lookup with relative tolerance; nullopt when t is off the grid
std::optional<double> series_at(
    const std::vector<std::pair<double, double>>& s, double t) {
  for (auto& [x, v] : s)
    if (std::abs(x - t) <= 1e-9 * std::max(x, t)) return v;
  return std::nullopt;
}

}  // namespace

std::optional<int> dilatation_equivalence(
    const std::vector<std::pair<double, double>>& N1,
    const std::vector<std::pair<double, double>>& N2) {
  bool overlap = false;
  for (auto& [t, v] : N2)
    if (series_at(N1, t)) overlap = true;
  if (!overlap)
    throw std::invalid_argument("dilatation_equivalence: disjoint t grids");
  for (int lambda = 1; lambda <= 64; lambda *= 2) {
    bool ok = true;
    for (auto& [t, v2] : N2) {
      auto lower = series_at(N1, t / lambda);
      auto upper = series_at(N1, t * lambda);
      if (lower && 0.5 * *lower > v2 + 1e-12) { ok = false; break; }
      if (upper && v2 > 2 * *upper + 1e-12) { ok = false; break; }
    }
    if (ok) return lambda;
  }
  return std::nullopt;
}

HeatVolumeReport heat_volume_bound_check(const MetricMeasureSpace& space,
                                         const WeightedSpectrum& spec,
                                         const std::vector<double>& t_grid,
                                         PointRef center) {
  if (t_grid.size() < 4)
    throw std::invalid_argument(
        "heat_volume_bound_check: need at least 4 grid points");
  HeatVolumeReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  ScaleSeries hseries;
  for (double t : t_grid) {
    double H = heat_trace(spec, t);
    double V = ball_volume(space, center, std::sqrt(t));
    double ratio = H * V;
    rep.rows.push_back({t, H, V, ratio});
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    hseries.samples.emplace_back(t, H);
  }
  SlopeConfig sc;
  sc.window = 3;
  sc.regime = {0, hseries.samples.size() - 1};
  rep.dinf_slope = -2 * slope_limsup(hseries, sc).liminf_slope;
  return rep;
}

double dirichlet_lambda1(const MetricMeasureSpace& graph,
                         const std::vector<PointRef>& subset) {
  const auto& adj = graph.adjacency();
  if (adj.empty())
    throw std::logic_error("dirichlet_lambda1: needs a graph-backed space");
  if (subset.empty())
    throw std::invalid_argument("dirichlet_lambda1: empty subset");
  if (subset.size() >= graph.size())
    throw std::invalid_argument(
        "dirichlet_lambda1: subset must be proper (no boundary otherwise)");
  if (subset.size() > 4096)
    throw std::length_error("dirichlet_lambda1: subset exceeds dense budget");
  std::vector<std::ptrdiff_t> pos(graph.size(), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) pos[subset[i]] = i;
  std::size_t m = subset.size();
  std::vector<double> a(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double deg = 0;
    for (auto& [j, w] : adj[subset[i]]) {
      deg += w;
      if (pos[j] >= 0) a[i * m + std::size_t(pos[j])] = -w;
    }
    a[i * m + i] = deg;
  }
  auto evals = dense_eigenvalues(a, lapack_int(m));
  return *std::min_element(evals.begin(), evals.end());
}

A0Report verify_a0_eq_dinf(int d, int side, const NSConfig& config) {
  A0Report rep;
  rep.alpha0 = ns_numbers({spectrum_torus(d, side)}, config).alpha0;
  SpaceSpec lat;
  lat.kind = "lattice";
  lat.params["d"] = d;
  lat.params["budget"] = 64;
  rep.dinf = asymptotic_dimension(build_space(lat)).limsup_slope;
  rep.difference = std::abs(rep.alpha0 - rep.dinf);
  return rep;
}

MetricMeasureSpace torus_graph(int d, int side, std::uint64_t perturb_seed) {
  if (d < 1 || d > 3) throw std::invalid_argument("torus_graph: d in [1,3]");
  if (side < 3) throw std::invalid_argument("torus_graph: side >= 3");
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= std::size_t(side);
  std::mt19937_64 rng(perturb_seed);
  std::uniform_real_distribution<double> uni(1.0, 2.0);
  std::vector<std::tuple<int, int, double>> edges;
  std::size_t stride = 1;
  for (int dim = 0; dim < d; ++dim) {
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t digit = (v / stride) % std::size_t(side);
      std::size_t up = digit + 1 == std::size_t(side)
                           ? v - digit * stride
                           : v + stride;
      double w = perturb_seed ? uni(rng) : 1.0;
      edges.emplace_back(int(v), int(up), w);
    }
    stride *= std::size_t(side);
  }
  std::string desc = "torus_graph:d=" + std::to_string(d) +
                     ",side=" + std::to_string(side) +
                     ",seed=" + std::to_string(perturb_seed);
  return MetricMeasureSpace::graph(n, edges, {}, 0, double(d * side),
                                   perturb_seed == 0, desc);
}

}  // namespace specdim
