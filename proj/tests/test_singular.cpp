#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "specdim/singular.hpp"

using namespace specdim;

TEST_CASE("step function evaluation and validation") {
  auto f = StepFunction::steps({1, 2, 3}, {1.0, 0.8, 0.5, 0.0});
  CHECK(f(0.5) == 1.0);
  CHECK(f(1.0) == 0.8);  // right continuous
  CHECK(f(2.5) == 0.5);
  CHECK(f(5.0) == 0.0);
  CHECK(!f.is_zero());
  CHECK_THROWS_AS(StepFunction::steps({2, 1}, {1, 0.5, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StepFunction::steps({1, 2}, {0.5, 1.0, 0}),
                  std::invalid_argument);  // must be non-increasing

  auto p = StepFunction::power(-0.5, 2.0);
  CHECK(p(4.0) == doctest::Approx(1.0));
  CHECK(p.integrable_at_zero());
  CHECK(!StepFunction::power(-1.5).integrable_at_zero());
}

TEST_CASE("distribution function from a spectrum") {
  WeightedSpectrum sp;
  sp.entries = {{1.0, 0.2}, {2.0, 0.3}, {3.0, 0.5}};
  sp.normalization = 1.0;
  auto lam = distribution_from_spectrum(sp);
  CHECK(lam(0.5) == doctest::Approx(1.0));
  CHECK(lam(1.0) == doctest::Approx(0.8));
  CHECK(lam(2.5) == doctest::Approx(0.5));
  CHECK(lam(3.0) == doctest::Approx(0.0));
}

TEST_CASE("rearrangement of a step distribution") {
  auto lam = StepFunction::steps({1, 2, 3}, {1.0, 0.8, 0.5, 0.0});
  auto mu = rearrangement(lam);
  CHECK(mu(0.2) == doctest::Approx(3.0));
  CHECK(mu(0.6) == doctest::Approx(2.0));
  CHECK(mu(0.9) == doctest::Approx(1.0));
  CHECK(mu(1.5) == doctest::Approx(0.0));
}

TEST_CASE("rearrangement is an involution on vanishing step functions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::uniform_int_distribution<int> pieces(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    int k = pieces(rng);
    std::vector<double> bp, vals;
    double b = 0;
    for (int i = 0; i < k; ++i) { b += u(rng); bp.push_back(b); }
    std::vector<double> raw;
    for (int i = 0; i <= k; ++i) raw.push_back(i == k ? 0.0 : u(rng));
    std::sort(raw.rbegin(), raw.rend());
    auto f = StepFunction::steps(bp, raw);
    auto g = rearrangement(rearrangement(f));
    for (double t : {0.05, 0.3, 0.9, 1.7, 3.1, 9.0})
      CHECK(g(t) == doctest::Approx(f(t)).epsilon(1e-12));
  }
}

TEST_CASE("analytic rearrangement: power laws invert") {
  auto mu = rearrangement(StepFunction::power(-2.0));
  CHECK(mu.analytic);
  CHECK(mu.exponent == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(mu.coeff == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(rearrangement(StepFunction::power(1.0)),
                  std::invalid_argument);
}

TEST_CASE("spectral dimension") {
  CHECK(spectral_dimension(StepFunction::power(-0.5), 1e-6, 0.1) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(spectral_dimension(StepFunction::power(0, 3.0), 1e-6, 0.1) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("duality on the power family") {
  for (double a : {0.25, 0.5, 1.0, 3.0, 4.0}) {
    auto rep = duality_check(StepFunction::power(-a));
    CHECK(!rep.degenerate);
    CHECK(rep.agree);
    CHECK(std::abs(rep.lhs - rep.rhs) <= 0.02);
  }
  auto deg = duality_check(StepFunction::steps({1}, {1.0, 0.0}));
  CHECK(deg.degenerate);
}

TEST_CASE("eccentricity of power laws") {
  auto e1 = eccentricity(StepFunction::power(-1.0));
  CHECK(!e1.integrable);
  CHECK(e1.limit_estimate == doctest::Approx(0.98437).epsilon(1e-3));
  CHECK(e1.is_eccentric);

  auto e2 = eccentricity(StepFunction::power(-0.5));
  CHECK(e2.integrable);
  CHECK(e2.limit_estimate == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-3));
  CHECK(!e2.is_eccentric);
}

TEST_CASE("power transform") {
  auto p = power_transform(StepFunction::power(-0.5, 4.0), 2.0);
  CHECK(p.exponent == doctest::Approx(-1.0));
  CHECK(p.coeff == doctest::Approx(16.0));
  auto s = power_transform(StepFunction::steps({1}, {4.0, 0.0}), 0.5);
  CHECK(s(0.5) == doctest::Approx(2.0));
}

TEST_CASE("Dixmier trace") {
  auto T = StepFunction::power(-1.0);
  CHECK(dixmier_trace(T, T) == doctest::Approx(1.0));
  // lower order terms are annihilated
  CHECK(std::abs(dixmier_trace(StepFunction::power(-0.5), T)) <= 1e-3);
  // linearity in the scale of mu_A
  double one = dixmier_trace(StepFunction::power(-1.0, 1.0), T);
  double three = dixmier_trace(StepFunction::power(-1.0, 3.0), T);
  CHECK(three == doctest::Approx(3 * one).epsilon(1e-9));
  CHECK_THROWS_AS(dixmier_trace(T, StepFunction::steps({1}, {0.0, 0.0})),
                  std::domain_error);

  LimitProcedure last;
  last.kind = LimitProcedure::Kind::LastWindow;
  CHECK(dixmier_trace(T, T, last) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("limit procedures agree on constant ratio sequences") {
  std::vector<std::pair<double, double>> ratios;
  for (int k = 1; k <= 40; ++k) ratios.emplace_back(std::ldexp(1.0, -k), 0.7);
  LimitProcedure cesaro;
  LimitProcedure last;
  last.kind = LimitProcedure::Kind::LastWindow;
  CHECK(cesaro.apply(ratios) == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(last.apply(ratios) == doctest::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("torus spectrum feeds the full pipeline") {
  auto sp = spectrum_torus(2, 64);
  WeightedSpectrum vals;
  vals.normalization = sp.normalization;
  vals.volume = sp.volume;
  double thr = 1e-10 * sp.lambda_max();
  for (auto& [l, w] : sp.entries)
    if (l > thr) vals.entries.emplace_back(1.0 / std::sqrt(l), w);
  std::sort(vals.entries.begin(), vals.entries.end());
  auto lam = distribution_from_spectrum(vals);
  auto mu = rearrangement(lam);
  double ds = spectral_dimension(mu, std::ldexp(1.0, -8), std::ldexp(1.0, -4));
  CHECK(std::abs(ds - 2.0) < 0.2);
  auto fitted = power_transform(StepFunction::power(-1.0 / ds), ds);
  CHECK(fitted.exponent == doctest::Approx(-1.0));
  auto rep = eccentricity(fitted);
  CHECK(rep.is_eccentric);
  CHECK(dixmier_trace(fitted, fitted) == doctest::Approx(1.0));
}
