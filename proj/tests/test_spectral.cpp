#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specdim/spectral.hpp"

using namespace specdim;

TEST_CASE("dense spectrum of small graphs") {
  auto c4 = spectrum_dense(torus_graph(1, 4));
  REQUIRE(c4.entries.size() == 4);
  CHECK(c4.entries[0].first == doctest::Approx(0.0));
  CHECK(c4.entries[1].first == doctest::Approx(2.0));
  CHECK(c4.entries[2].first == doctest::Approx(2.0));
  CHECK(c4.entries[3].first == doctest::Approx(4.0));
  CHECK(c4.normalization == doctest::Approx(1.0));

  auto p2 = MetricMeasureSpace::graph(2, {{0, 1, 1.0}}, {1, 1}, 0, 2, true, "p2");
  auto sp = spectrum_dense(p2);
  REQUIRE(sp.entries.size() == 2);
  CHECK(sp.entries[0].first == doctest::Approx(0.0));
  CHECK(sp.entries[1].first == doctest::Approx(2.0));
}

TEST_CASE("kernel weight counts components") {
  auto two = MetricMeasureSpace::graph(4, {{0, 1, 1.0}, {2, 3, 1.0}},
                                       {1, 1, 1, 1}, 0, 2, true, "2K2");
  auto sp = spectrum_dense(two);
  CHECK(kernel_weight(sp) == doctest::Approx(0.5));
}

TEST_CASE("closed form torus spectrum matches dense") {
  auto closed = spectrum_torus(1, 32);
  auto dense = spectrum_dense(torus_graph(1, 32));
  REQUIRE(closed.entries.size() == dense.entries.size());
  for (std::size_t i = 0; i < closed.entries.size(); ++i)
    CHECK(std::abs(closed.entries[i].first - dense.entries[i].first) < 1e-9);
}

TEST_CASE("counting function on a large cycle") {
  auto sp = spectrum_torus(1, 1024);
  CHECK(kernel_weight(sp) == doctest::Approx(1.0 / 1024));
  CHECK(counting0(sp, 0.01) == doctest::Approx(0.03125));
  CHECK(counting(sp, 0.01) == doctest::Approx(0.03125 + 1.0 / 1024));
  CHECK(counting(sp, 5.0) == doctest::Approx(1.0));
}

TEST_CASE("heat trace approaches the Bessel form of Z") {
  auto sp = spectrum_torus(1, 1024);
  auto bessel = [](double t) {
    return std::exp(-2 * t) * std::cyl_bessel_i(0, 2 * t);
  };
  CHECK(heat_trace(sp, 16.0) == doctest::Approx(bessel(16.0)).epsilon(1e-6));
  CHECK(heat_trace(sp, 0.5) == doctest::Approx(bessel(0.5)).epsilon(1e-9));
  CHECK(heat_trace0(sp, 16.0, 0.0) == doctest::Approx(heat_trace(sp, 16.0)));
}

TEST_CASE("Laplace transform identity") {
  auto sp = spectrum_torus(2, 32);
  CHECK(laplace_transform_check(sp, {0.1, 1.0, 10.0}) < 1e-10);
}

TEST_CASE("Betti numbers extrapolate to zero along the exhaustion") {
  auto est = betti0({spectrum_torus(2, 16), spectrum_torus(2, 32),
                     spectrum_torus(2, 64)});
  CHECK(std::abs(est.b0) < 1e-3);
  REQUIRE(est.per_entry.size() == 3);
  CHECK(est.per_entry[0] == doctest::Approx(1.0 / 256));
  CHECK(est.per_entry[2] == doctest::Approx(1.0 / 4096));
  CHECK(est.monotone);
}

TEST_CASE("Novikov-Shubin numbers of tori") {
  auto d1 = ns_numbers({spectrum_torus(1, 256)});
  CHECK(d1.alpha0 == doctest::Approx(1.1033).epsilon(1e-3));
  CHECK(d1.alpha0_prime == doctest::Approx(1.0140).epsilon(1e-3));
  CHECK(d1.alpha0_lower <= d1.alpha0_prime);
  CHECK(d1.alpha0_prime <= d1.alpha0 + 0.05);

  auto d2 = ns_numbers({spectrum_torus(2, 128)});
  CHECK(d2.alpha0 == doctest::Approx(2.0289).epsilon(1e-3));
  CHECK(d2.alpha0_prime == doctest::Approx(2.0280).epsilon(1e-3));
  CHECK(d2.alpha0_lower <= d2.alpha0_prime);
  CHECK(d2.alpha0_prime <= d2.alpha0 + 0.05);

  NSConfig c3;
  c3.counting_t_min = 0.08;
  c3.counting_t_max = 2;
  c3.grid_ratio = std::sqrt(2.0);
  c3.window = 6;
  c3.heat_t_min = 1;
  c3.heat_t_max = 24;
  auto d3 = ns_numbers({spectrum_torus(3, 16)}, c3);
  CHECK(d3.alpha0 == doctest::Approx(3.135).epsilon(1e-2));
  CHECK(std::abs(d3.alpha0 - 3.0) < 0.3);
}

TEST_CASE("dilatation equivalence of comparable counting functions") {
  std::vector<std::pair<double, double>> n1, n2, n3;
  for (int k = 0; k <= 40; ++k) {
    double t = std::ldexp(1.0, -k);
    n1.emplace_back(t, std::sqrt(t));
    n2.emplace_back(t, std::sqrt(3 * t));
    n3.emplace_back(t, t);
  }
  auto ok = dilatation_equivalence(n1, n2);
  REQUIRE(ok.has_value());
  CHECK(*ok == 1);
  CHECK(!dilatation_equivalence(n1, n3).has_value());
}

TEST_CASE("heat kernel stays in the volume band") {
  SpaceSpec spec;
  spec.kind = "torus";
  spec.params["d"] = 1;
  spec.params["side"] = 256;
  auto space = build_space(spec);
  auto sp = spectrum_torus(1, 256);
  std::vector<double> grid;
  for (double t = 4; t <= 256.0 * 256 / 40; t *= 2) grid.push_back(t);
  auto rep = heat_volume_bound_check(space, sp, grid, space.base_point());
  CHECK(rep.max_ratio / rep.min_ratio <= 4.0);
  CHECK(std::abs(rep.dinf_slope - 1.0) < 0.15);
}

TEST_CASE("Dirichlet eigenvalues") {
  auto cycle = torus_graph(1, 20);
  std::vector<PointRef> path;
  for (PointRef p = 1; p <= 9; ++p) path.push_back(p);
  CHECK(dirichlet_lambda1(cycle, path) ==
        doctest::Approx(2 - 2 * std::cos(std::numbers::pi / 10)).epsilon(1e-9));
  CHECK(dirichlet_lambda1(cycle, {0}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(dirichlet_lambda1(cycle, {}), std::invalid_argument);
}

TEST_CASE("isoperimetric lower bound scales like r^-2 on Z") {
  auto cycle = torus_graph(1, 128);
  for (int r : {8, 16, 32}) {
    std::vector<PointRef> ball;
    for (int k = -r; k <= r; ++k) ball.push_back(PointRef((k + 128) % 128));
    double l1 = dirichlet_lambda1(cycle, ball);
    double scaled = l1 * r * r;
    CHECK(scaled > 1.2);   // within 50% of pi^2/4
    CHECK(scaled < 3.7);
  }
}

TEST_CASE("main theorem: alpha0 matches dinf on tori") {
  auto r1 = verify_a0_eq_dinf(1, 256);
  CHECK(r1.difference <= 0.2);
  auto r2 = verify_a0_eq_dinf(2, 128);
  CHECK(r2.difference <= 0.2);
}

TEST_CASE("Lanczos trace agrees with the dense solve") {
  auto g = torus_graph(2, 16);
  auto dense = spectrum_dense(g);
  auto sl = spectrum_lanczos(g);
  for (double t : {0.5, 1.0, 4.0})
    CHECK(heat_trace(sl, t) ==
          doctest::Approx(heat_trace(dense, t)).epsilon(0.05));
}

TEST_CASE("perturbed torus: alpha0 stability and dilatation") {
  NSConfig c;
  c.counting_t_min = 400.0 / 4096;
  c.counting_t_max = 1;
  c.window = 3;
  auto ref = ns_numbers({spectrum_torus(2, 64)}, c);
  auto pert = ns_numbers({spectrum_dense(torus_graph(2, 64, 1))}, c);
  CHECK(std::abs(ref.alpha0 - pert.alpha0) <= 0.25);
  auto lam = dilatation_equivalence(ref.counting_series, pert.counting_series);
  REQUIRE(lam.has_value());
  CHECK(*lam <= 64);
}
