#include <doctest.h>

#include <cmath>

#include "specdim/dimension.hpp"
#include "specdim/roughiso.hpp"
#include "specdim/spaces.hpp"

using namespace specdim;

TEST_CASE("identity map is a rough isometry with trivial constants") {
  auto s = build_space(parse_space_tag("lattice:d=1,budget=32"));
  auto w = verify_rough_isometry(s, s, [](PointRef p) { return p; });
  CHECK(w.ok);
  CHECK(w.a == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w.b == doctest::Approx(0.0));
  CHECK(w.eps == doctest::Approx(0.0));
  CHECK(w.violations.empty());
}

TEST_CASE("uniform scaling is a rough isometry with a = 2") {
  auto x = build_space(parse_space_tag("line:n=65,spacing=1"));
  auto y = build_space(parse_space_tag("line:n=65,spacing=2"));
  auto w = verify_rough_isometry(x, y, [](PointRef p) { return p; });
  CHECK(w.ok);
  CHECK(w.a == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(w.b == doctest::Approx(0.0));
  CHECK(w.eps <= 1e-9);  // image is all of Y

  auto bl = verify_bilipschitz(x, y, [](PointRef p) { return p; });
  REQUIRE(bl.has_value());
  CHECK(bl->first == doctest::Approx(2.0));
  CHECK(bl->second == doctest::Approx(2.0));
  auto id = verify_bilipschitz(x, x, [](PointRef p) { return p; });
  REQUIRE(id.has_value());
  CHECK(id->first == doctest::Approx(1.0));
  CHECK(id->second == doctest::Approx(1.0));
}

TEST_CASE("a line into the plane fails the net condition") {
  auto x = build_space(parse_space_tag("lattice:d=1,budget=64"));
  auto y = build_space(parse_space_tag("lattice:d=2,budget=64"));
  // image of x under p -> point with same first coordinate, second 0
  std::vector<PointRef> image(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    auto cx = x.coordinates(p);
    for (std::size_t q = 0; q < y.size(); ++q) {
      auto cy = y.coordinates(q);
      if (cy[0] == cx[0] && cy[1] == 0) { image[p] = q; break; }
    }
  }
  auto w = verify_rough_isometry(x, y, [&](PointRef p) { return image[p]; });
  CHECK(!w.ok);
  CHECK(w.eps > 32);
}

TEST_CASE("discretization with a fine net is the identity") {
  auto s = build_space(parse_space_tag("lattice:d=1,budget=16"));
  auto d = discretize(s, 1.0, 1.0);
  CHECK(d.net.size() == s.size());
  CHECK(d.graph.size() == s.size());
  double total = 0;
  for (std::size_t p = 0; p < d.graph.size(); ++p) total += d.graph.weight(p);
  CHECK(total == doctest::Approx(double(s.size())));
}

TEST_CASE("coarse net on a five point line") {
  auto s = build_space(parse_space_tag("line:n=5,spacing=1"));
  auto d = discretize(s, 3.0, 3.0);
  REQUIRE(d.net.size() == 2);
  CHECK(d.net[0] == 0);
  CHECK(d.net[1] == 3);
  // Voronoi masses: {0,1} -> 0 and {2,3,4} -> 3
  CHECK(d.graph.weight(0) == doctest::Approx(2.0));
  CHECK(d.graph.weight(1) == doctest::Approx(3.0));
  // net separation
  for (std::size_t i = 0; i < d.net.size(); ++i)
    for (std::size_t j = i + 1; j < d.net.size(); ++j)
      CHECK(s.distance(d.net[i], d.net[j]) >= 3.0);
}

TEST_CASE("discretized region keeps its asymptotic dimension") {
  auto s = build_space(
      parse_space_tag("region_alpha:alpha=0.5,resolution=0.25,budget=45"));
  AsymptoticConfig rc;
  rc.r_grid = {2};
  rc.R_min = 2;
  rc.R_max = 45;
  auto original = asymptotic_dimension(s, rc);

  auto d = discretize(s, 0.5, 0.5);
  AsymptoticConfig gc;
  gc.r_grid = {1};
  gc.R_min = 2;
  auto graph = asymptotic_dimension(d.graph, gc);
  CHECK(graph.limsup_slope == doctest::Approx(1.62191).epsilon(5e-4));
  CHECK(std::abs(graph.limsup_slope - original.limsup_slope) < 0.15);

  // the net inclusion is itself a rough isometry
  auto w = verify_rough_isometry(
      d.graph, s, [&](PointRef p) { return d.net[p]; });
  CHECK(w.ok);
}

TEST_CASE("scaled lattice keeps its asymptotic dimension") {
  auto x = build_space(parse_space_tag("line:n=65,spacing=1"));
  auto y = build_space(parse_space_tag("line:n=65,spacing=2"));
  AsymptoticConfig cx;
  cx.r_grid = {2};
  cx.R_min = 4;
  cx.R_max = 64;
  AsymptoticConfig cy;
  cy.r_grid = {4};
  cy.R_min = 8;
  cy.R_max = 128;
  auto ex = asymptotic_dimension(x, cx);
  auto ey = asymptotic_dimension(y, cy);
  CHECK(ex.limsup_slope == doctest::Approx(0.89771).epsilon(5e-4));
  CHECK(std::abs(ex.limsup_slope - ey.limsup_slope) < 0.15);
}
