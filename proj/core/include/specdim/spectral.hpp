#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specdim/space.hpp"
#include "specdim/spaces.hpp"

namespace specdim {

/// Volume-normalized eigenvalue data of a finite approximant: entries
/// (lambda_j, w_j) sorted by eigenvalue, w_j = vertex mass / total volume.
struct WeightedSpectrum {
  std::vector<std::pair<double, double>> entries;
  double normalization = 0;  // sum of weights
  double volume = 0;         // total vertex mass of the approximant
  std::string source;

  double lambda_max() const {
    return entries.empty() ? 0.0 : entries.back().first;
  }
};

struct LanczosConfig {
  int probes = 16;
  int steps = 80;
  std::uint64_t seed = 1;
};

/// Dense symmetric eigensolve of the graph Laplacian L = D - W. Throws
/// std::length_error above 4096 vertices.
WeightedSpectrum spectrum_dense(const MetricMeasureSpace& graph);

/// Closed-form torus spectrum: lambda_{k_1..k_d} = sum_i (2 - 2cos(2pi k_i/side)).
WeightedSpectrum spectrum_torus(int d, int side);

/// Stochastic Lanczos quadrature: probe-averaged spectral measure, suitable
/// for traces (heat trace, counting in aggregate) but not for individual
/// eigenvalues.
WeightedSpectrum spectrum_lanczos(const MetricMeasureSpace& graph,
                                  const LanczosConfig& config = {});

/// theta(t) = sum w_j exp(-t lambda_j); theta0 = theta - b0.
double heat_trace(const WeightedSpectrum& spec, double t);
double heat_trace0(const WeightedSpectrum& spec, double t, double b0);

/// N(t) = sum of weights with lambda_j < t; N0 drops kernel modes
/// (lambda <= 1e-10 * lambda_max).
double counting(const WeightedSpectrum& spec, double t);
double counting0(const WeightedSpectrum& spec, double t);

/// Max relative discrepancy between heat_trace and the Stieltjes sum over the
/// counting function's jumps across the t grid.
double laplace_transform_check(const WeightedSpectrum& spec,
                               const std::vector<double>& t_grid);

/// Kernel-mode weight of one spectrum (eigenvalues <= zero_tol * lambda_max).
double kernel_weight(const WeightedSpectrum& spec, double zero_tol = 1e-10);

struct BettiEstimate {
  double b0 = 0;                     // intercept of w_zero against 1/volume
  std::vector<double> per_entry;     // kernel weights along the exhaustion
  bool monotone = true;
};

/// Extrapolated L2-Betti number b0 from >= 3 exhaustion spectra.
BettiEstimate betti0(const std::vector<WeightedSpectrum>& exhaustion,
                     double zero_tol = 1e-10);

struct NSConfig {
  // Counting-form regime [t_min, t_max]; zeros select the calibrated default
  // t in [5 * gap, 1] where gap is the smallest positive eigenvalue (about
  // 200/side^2 on a side-length torus).
  double counting_t_min = 0;
  double counting_t_max = 0;
  // Heat-form regime; default t in [4, 1/gap] (about side^2/40).
  double heat_t_min = 0;
  double heat_t_max = 0;
  std::size_t window = 4;
  double grid_ratio = 2;
  double b0 = 0;
};

struct NSEstimate {
  double alpha0 = 0;        // 2 * limsup of log N0 / log t, t -> 0
  double alpha0_prime = 0;  // 2 * limsup of log theta0 / log(1/t), t -> inf
  double alpha0_lower = 0;  // liminf (counting form)
  double b0 = 0;
  std::vector<std::pair<double, double>> counting_series;  // (t, N0)
  std::vector<std::pair<double, double>> heat_series;      // (t, theta0)
  double cross_entry_spread = 0;  // alpha0 spread across exhaustion entries
};

/// Novikov-Shubin estimators at p = 0 from exhaustion spectra; the largest
/// entry drives the estimate, earlier entries feed the stability diagnostic.
NSEstimate ns_numbers(const std::vector<WeightedSpectrum>& exhaustion,
                      const NSConfig& config = {});

/// Smallest lambda in {1,2,4,...,64} with
/// (1/2) N1(t/lambda) <= N2(t) <= 2 N1(lambda t) at all shared dyadic grid
/// points; nullopt on failure.
std::optional<int> dilatation_equivalence(
    const std::vector<std::pair<double, double>>& N1,
    const std::vector<std::pair<double, double>>& N2);

struct HeatVolumeReport {
  // rows (t, H(t,x,x), V(x, sqrt t), ratio)
  std::vector<std::array<double, 4>> rows;
  double max_ratio = 0;
  double min_ratio = 0;
  double dinf_slope = 0;  // -2 * slope of log H against log t
};

/// Heat kernel diagonal vs volume band check. H(t,x,x) is taken as theta(t)
/// of the supplied spectrum, exact on vertex-transitive approximants.
HeatVolumeReport heat_volume_bound_check(const MetricMeasureSpace& space,
                                         const WeightedSpectrum& spec,
                                         const std::vector<double>& t_grid,
                                         PointRef center);

/// First Dirichlet eigenvalue of the Laplacian restricted to `subset`
/// (complement rows and columns deleted, degrees from the full graph).
double dirichlet_lambda1(const MetricMeasureSpace& graph,
                         const std::vector<PointRef>& subset);

struct A0Report {
  double dinf = 0;
  double alpha0 = 0;
  double difference = 0;
};

/// Main-theorem check d_inf = alpha0 on a torus model: spectra from the
/// closed form, d_inf from the matching lattice.
A0Report verify_a0_eq_dinf(int d, int side, const NSConfig& config = {});

/// Torus as an explicit graph, optionally with seeded edge weights drawn
/// uniformly from [1, 2] (seed 0 keeps unit weights).
MetricMeasureSpace torus_graph(int d, int side, std::uint64_t perturb_seed = 0);

}  // namespace specdim
