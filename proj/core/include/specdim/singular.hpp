#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "specdim/spectral.hpp"

namespace specdim {

/// Non-increasing right-continuous function on [0, inf): either step data
/// (value values[i] on [breakpoints[i-1], breakpoints[i]), with values[0] on
/// [0, breakpoints[0]) and values.back() past the last breakpoint) or an
/// analytic power law coeff * t^exponent evaluated in log domain.
struct StepFunction {
  std::vector<double> breakpoints;
  std::vector<double> values;
  bool analytic = false;
  double exponent = 0;
  double coeff = 1;

  static StepFunction steps(std::vector<double> breakpoints,
                            std::vector<double> values);
  static StepFunction power(double exponent, double coeff = 1);

  double operator()(double t) const;
  bool is_zero() const;
  bool integrable_at_zero() const;
  /// log of int_0^t; requires integrable_at_zero (log of t given, result log)
  double log_integral0(double log_t) const;
  /// log of int_t^1, t < 1
  double log_integral_to_one(double log_t) const;
};

/// lambda_A(s) = sum of weights with value > s from a positive operator's
/// spectral values.
StepFunction distribution_from_spectrum(const WeightedSpectrum& spec);

/// Generalized inverse mu(t) = inf{s >= 0 : lambda(s) <= t}; an involution on
/// step functions vanishing at infinity.
StepFunction rearrangement(const StepFunction& lambda);

/// Pointwise p-th power.
StepFunction power_transform(const StepFunction& mu, double p);

/// (liminf_{t->0} log mu(t) / log(1/t))^{-1} over dyadic t in
/// [t_min, t_max]; +inf when the exponent estimate is <= zero_thr.
double spectral_dimension(const StepFunction& mu, double t_min, double t_max,
                          std::size_t window = 3, double zero_thr = 1e-6);

struct DualityReport {
  double lhs = 0;  // liminf log mu / log(1/t) via rearrangement
  double rhs = 0;  // (limsup log lambda(s) / log(1/s))^{-1}
  bool agree = false;
  bool degenerate = false;  // compactly supported lambda
};

DualityReport duality_check(const StepFunction& lambda, double tol = 0.02);

struct EccentricityReport {
  bool integrable = true;  // branch by divergence of int_0^1 mu
  std::vector<std::pair<double, double>> ratios;  // (t, ratio in (0,1])
  double limit_estimate = 0;
  bool is_eccentric = false;
};

/// 0-eccentricity test: integral ratios at dyadic t -> 0, branch chosen by
/// integrability of mu at 0.
EccentricityReport eccentricity(const StepFunction& mu, double tol = 0.05,
                                int dyadic_depth = 0);

struct LimitProcedure {
  enum class Kind { LogCesaro, LastWindow } kind = Kind::LogCesaro;
  double window_decades = 3;
  std::size_t last_points = 5;

  double apply(const std::vector<std::pair<double, double>>& ratios) const;
};

/// Dixmier-type trace: limit procedure applied to the integral-ratio
/// sequence over dyadic t -> 0; the branch of mu_T picks the formula
/// (int_0^t or int_t^1).
double dixmier_trace(const StepFunction& mu_A, const StepFunction& mu_T,
                     const LimitProcedure& lim = {}, int dyadic_depth = 0);

}  // namespace specdim
