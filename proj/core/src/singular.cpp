#include "specdim/singular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specdim/dimension.hpp"

namespace specdim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

StepFunction StepFunction::steps(std::vector<double> breakpoints,
                                 std::vector<double> values) {
  if (values.size() != breakpoints.size() + 1)
    throw std::invalid_argument("StepFunction: need one more value than breakpoints");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (breakpoints[i] <= 0)
      throw std::invalid_argument("StepFunction: breakpoints must be positive");
    if (i > 0 && breakpoints[i] <= breakpoints[i - 1])
      throw std::invalid_argument("StepFunction: breakpoints must increase");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0)
      throw std::invalid_argument("StepFunction: values must be non-negative");
    if (i > 0 && values[i] > values[i - 1])
      throw std::invalid_argument("StepFunction: values must be non-increasing");
  }
  StepFunction f;
  f.breakpoints = std::move(breakpoints);
  f.values = std::move(values);
  return f;
}

StepFunction StepFunction::power(double exponent, double coeff) {
  if (coeff < 0)
    throw std::invalid_argument("StepFunction: power coefficient must be >= 0");
  if (exponent > 0)
    throw std::invalid_argument("StepFunction: power exponent must be <= 0");
  StepFunction f;
  f.analytic = true;
  f.exponent = exponent;
  f.coeff = coeff;
  return f;
}

double StepFunction::operator()(double t) const {
  if (t < 0) throw std::domain_error("StepFunction: negative argument");
  if (analytic) {
    if (coeff == 0) return 0;
    if (t == 0) return exponent < 0 ? kInf : coeff;
    return coeff * std::exp(exponent * std::log(t));
  }
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  return values[std::size_t(it - breakpoints.begin())];
}

bool StepFunction::is_zero() const {
  if (analytic) return coeff == 0;
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return v == 0; });
}

bool StepFunction::integrable_at_zero() const {
  if (analytic) return coeff == 0 || exponent > -1;
  return true;
}

double StepFunction::log_integral0(double log_t) const {
  if (analytic) {
    if (coeff == 0) return -kInf;
    if (exponent <= -1)
      throw std::domain_error("log_integral0: not integrable at 0");
    return std::log(coeff / (exponent + 1)) + (exponent + 1) * log_t;
  }
  double t = std::exp(log_t);
  double acc = 0, prev = 0;
  for (std::size_t i = 0; i <= breakpoints.size(); ++i) {
    double hi = i < breakpoints.size() ? breakpoints[i] : kInf;
    double seg_hi = std::min(t, hi);
    if (seg_hi > prev) acc += values[i] * (seg_hi - prev);
    if (t <= hi) break;
    prev = hi;
  }
  return std::log(acc);
}

double StepFunction::log_integral_to_one(double log_t) const {
  if (log_t >= 0)
    throw std::domain_error("log_integral_to_one: needs t < 1");
  if (analytic) {
    if (coeff == 0) return -kInf;
    double e1 = exponent + 1;
    if (e1 > 0)  // integrable: c (1 - t^{e+1}) / (e+1)
      return std::log(coeff / e1) + std::log1p(-std::exp(e1 * log_t));
    if (e1 == 0)  // c log(1/t)
      return std::log(coeff) + std::log(-log_t);
    // c (t^{e+1} - 1) / (-(e+1)), dominated by the t power
    return std::log(coeff / -e1) + e1 * log_t +
           std::log1p(-std::exp(-e1 * log_t));
  }
  double t = std::exp(log_t);
  double acc = 0, prev = 0;
  for (std::size_t i = 0; i <= breakpoints.size(); ++i) {
    double hi = i < breakpoints.size() ? breakpoints[i] : kInf;
    double lo = std::max(prev, t);
    double up = std::min(hi, 1.0);
    if (up > lo) acc += values[i] * (up - lo);
    if (hi >= 1.0) break;
    prev = hi;
  }
  return std::log(acc);
}

StepFunction distribution_from_spectrum(const WeightedSpectrum& spec) {
  // group distinct positive values ascending with accumulated weight
  std::vector<std::pair<double, double>> groups;
  double total = 0;
  std::vector<std::pair<double, double>> sorted = spec.entries;
  std::sort(sorted.begin(), sorted.end());
  for (auto& [v, w] : sorted) {
    if (v <= 0) continue;
    total += w;
    if (!groups.empty() && groups.back().first == v)
      groups.back().second += w;
    else
      groups.emplace_back(v, w);
  }
  std::vector<double> bps, vals;
  vals.push_back(total);
  double remaining = total;
  for (auto& [v, w] : groups) {
    bps.push_back(v);
    remaining -= w;
    vals.push_back(std::max(remaining, 0.0));
  }
  return StepFunction::steps(std::move(bps), std::move(vals));
}

StepFunction rearrangement(const StepFunction& lambda) {
  if (lambda.analytic) {
    if (lambda.coeff == 0) return lambda;
    if (lambda.exponent >= 0)
      throw std::invalid_argument(
          "rearrangement: analytic lambda must strictly decrease");
    double e = 1.0 / lambda.exponent;
    return StepFunction::power(e, std::pow(lambda.coeff, -e));
  }
  const auto& B = lambda.breakpoints;
  const auto& V = lambda.values;
  if (V.back() > 0)
    throw std::invalid_argument("rearrangement: lambda must vanish at infinity");
  if (lambda.is_zero()) return StepFunction::steps({}, {0.0});

  std::vector<double> thresholds;  // distinct positive values, ascending
  for (auto it = V.rbegin(); it != V.rend(); ++it)
    if (*it > 0 && (thresholds.empty() || *it > thresholds.back()))
      thresholds.push_back(*it);

  std::vector<double> mv(thresholds.size() + 1, 0.0);
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    double thr = k == 0 ? 0.0 : thresholds[k - 1];
    for (std::size_t j = 0; j < B.size(); ++j)
      if (V[j + 1] <= thr) { mv[k] = B[j]; break; }
  }
  return StepFunction::steps(std::move(thresholds), std::move(mv));
}

StepFunction power_transform(const StepFunction& mu, double p) {
  if (p <= 0) throw std::domain_error("power_transform: p must be positive");
  if (mu.analytic) return StepFunction::power(mu.exponent * p,
                                              std::pow(mu.coeff, p));
  std::vector<double> vals;
  for (double v : mu.values) vals.push_back(std::pow(v, p));
  return StepFunction::steps(mu.breakpoints, std::move(vals));
}

namespace {

// windowed slopes of log f against log argument over a dyadic grid
std::pair<double, double> dyadic_exponents(
    const std::vector<std::pair<double, double>>& samples,
    std::size_t window) {
  ScaleSeries series;
  series.samples = samples;
  SlopeConfig sc;
  sc.window = window;
  sc.regime = {0, samples.size() - 1};
  auto est = slope_limsup(series, sc);
  return {est.liminf_slope, est.limsup_slope};
}

}  // namespace

double spectral_dimension(const StepFunction& mu, double t_min, double t_max,
                          std::size_t window, double zero_thr) {
  if (t_min <= 0 || t_min >= t_max)
    throw std::invalid_argument("spectral_dimension: need 0 < t_min < t_max");
  std::vector<std::pair<double, double>> samples;  // (1/t, mu(t))
  for (double t = t_max; t >= t_min * (1 - 1e-9); t /= 2) {
    double v = mu(t);
    if (v > 0 && std::isfinite(v)) samples.emplace_back(1.0 / t, v);
  }
  std::sort(samples.begin(), samples.end());
  if (samples.size() < window + 1)
    throw std::invalid_argument("spectral_dimension: regime holds too few samples");
  double exponent = dyadic_exponents(samples, window).first;  // liminf
  if (exponent <= zero_thr) return kInf;
  return 1.0 / exponent;
}

DualityReport duality_check(const StepFunction& lambda, double tol) {
  DualityReport rep;
  std::vector<std::pair<double, double>> lsamples;  // (s, lambda(s)), s -> inf
  for (int k = 0; k <= 60; ++k) {
    double s = std::exp2(k);
    double v = lambda(s);
    if (v > 0) lsamples.emplace_back(s, v);
  }
  StepFunction mu = rearrangement(lambda);
  std::vector<std::pair<double, double>> msamples;  // (1/t, mu(t)), t -> 0
  for (int k = 1; k <= 60; ++k) {
    double t = std::exp2(-k);
    double v = mu(t);
    if (v > 0 && std::isfinite(v)) msamples.emplace_back(1.0 / t, v);
  }
  if (lsamples.size() < 4 || msamples.size() < 4) {
    rep.degenerate = true;
    return rep;
  }
  // rhs: (limsup log lambda / log(1/s))^{-1} = 1 / max(-slope)
  double lam_limsup = -dyadic_exponents(lsamples, 3).first;
  // lhs: liminf log mu / log(1/t) = min slope of log mu against log(1/t)
  rep.lhs = dyadic_exponents(msamples, 3).first;
  if (lam_limsup <= 1e-9 || rep.lhs <= 1e-9) {
    rep.degenerate = true;
    return rep;
  }
  rep.rhs = 1.0 / lam_limsup;
  rep.agree = std::abs(rep.lhs - rep.rhs) <= tol;
  return rep;
}

EccentricityReport eccentricity(const StepFunction& mu, double tol,
                                int dyadic_depth) {
  EccentricityReport rep;
  rep.integrable = mu.integrable_at_zero();
  if (mu.is_zero()) return rep;
  int depth = dyadic_depth > 0 ? dyadic_depth : (mu.analytic ? 64 : 40);
  const double log2 = std::log(2.0);
  for (int k = 2; k <= depth; ++k) {
    double log_t = -k * log2;
    double r;
    if (rep.integrable)
      r = std::exp(mu.log_integral0(log_t) - mu.log_integral0(log_t + log2));
    else
      r = std::exp(mu.log_integral_to_one(log_t + log2) -
                   mu.log_integral_to_one(log_t));
    if (std::isfinite(r) && r > 0)
      rep.ratios.emplace_back(std::exp2(double(-k)), r);
  }
  for (auto& [t, r] : rep.ratios)
    rep.limit_estimate = std::max(rep.limit_estimate, r);
  rep.is_eccentric = rep.limit_estimate >= 1 - tol;
  return rep;
}

double LimitProcedure::apply(
    const std::vector<std::pair<double, double>>& ratios) const {
  if (ratios.empty())
    throw std::invalid_argument("LimitProcedure: empty ratio sequence");
  // ratios ordered by decreasing t; the tail is the asymptotic regime
  if (kind == Kind::LastWindow) {
    std::size_t n = std::min(last_points, ratios.size());
    double s = 0;
    for (std::size_t i = ratios.size() - n; i < ratios.size(); ++i)
      s += ratios[i].second;
    return s / double(n);
  }
  double t_min = ratios.back().first;
  double cutoff = t_min * std::pow(10.0, window_decades);
  double s = 0;
  std::size_t n = 0;
  for (auto& [t, r] : ratios)
    if (t <= cutoff) { s += r; ++n; }
  return s / double(n);
}

double dixmier_trace(const StepFunction& mu_A, const StepFunction& mu_T,
                     const LimitProcedure& lim, int dyadic_depth) {
  if (mu_T.is_zero())
    throw std::domain_error("dixmier_trace: reference mu is zero");
  bool integrable = mu_T.integrable_at_zero();
  if (integrable && !mu_A.integrable_at_zero()) return kInf;
  int depth = dyadic_depth > 0
                  ? dyadic_depth
                  : ((mu_A.analytic && mu_T.analytic) ? 8192 : 40);
  const double log2 = std::log(2.0);
  std::vector<std::pair<double, double>> ratios;
  for (int k = 2; k <= depth; ++k) {
    double log_t = -k * log2;
    double lr = integrable
                    ? mu_A.log_integral0(log_t) - mu_T.log_integral0(log_t)
                    : mu_A.log_integral_to_one(log_t) -
                          mu_T.log_integral_to_one(log_t);
    double r = std::exp(lr);
    if (std::isfinite(r) || r == 0)
      ratios.emplace_back(std::exp2(double(-k)), std::max(r, 0.0));
  }
  return lim.apply(ratios);
}

}  // namespace specdim
