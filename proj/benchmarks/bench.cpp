#include <benchmark/benchmark.h>

#include "specdim/covering.hpp"
#include "specdim/dimension.hpp"
#include "specdim/spaces.hpp"
#include "specdim/spectral.hpp"

using namespace specdim;

namespace {

void BM_packing(benchmark::State& state) {
  auto s = build_space(parse_space_tag("lattice:d=2,budget=48"));
  std::vector<PointRef> region(s.size());
  for (std::size_t i = 0; i < region.size(); ++i) region[i] = i;
  double r = double(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(packing_number(s, region, r));
}
BENCHMARK(BM_packing)->Arg(2)->Arg(4)->Arg(8);

void BM_asymptotic_dimension(benchmark::State& state) {
  auto s = build_space(parse_space_tag("lattice:d=2,budget=64"));
  for (auto _ : state)
    benchmark::DoNotOptimize(asymptotic_dimension(s, {}).limsup_slope);
}
BENCHMARK(BM_asymptotic_dimension);

void BM_dense_spectrum(benchmark::State& state) {
  auto g = torus_graph(2, int(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(spectrum_dense(g).entries.size());
}
BENCHMARK(BM_dense_spectrum)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_lanczos_spectrum(benchmark::State& state) {
  auto g = torus_graph(2, 64);
  for (auto _ : state)
    benchmark::DoNotOptimize(spectrum_lanczos(g).entries.size());
}
BENCHMARK(BM_lanczos_spectrum)->Unit(benchmark::kMillisecond);

void BM_heat_trace(benchmark::State& state) {
  auto sp = spectrum_torus(2, 128);
  for (auto _ : state) {
    double total = 0;
    for (double t = 0.1; t < 100; t *= 2) total += heat_trace(sp, t);
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_heat_trace);

}  // namespace

BENCHMARK_MAIN();
