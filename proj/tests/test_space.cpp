#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "specdim/space.hpp"
#include "specdim/spaces.hpp"

using namespace specdim;

namespace {

MetricMeasureSpace unit_points(MetricMeasureSpace::CoordMetric m) {
  return MetricMeasureSpace::coords({{0, 0}, {3, 4}, {1, 1}}, m,
                                    {1, 1, 1}, 0, 10, false, "pts");
}

}  // namespace

TEST_CASE("coordinate metrics") {
  auto e = unit_points(MetricMeasureSpace::CoordMetric::Euclidean);
  CHECK(e.distance(0, 1) == doctest::Approx(5.0));
  auto l1 = unit_points(MetricMeasureSpace::CoordMetric::L1);
  CHECK(l1.distance(0, 1) == doctest::Approx(7.0));
  auto li = unit_points(MetricMeasureSpace::CoordMetric::Linf);
  CHECK(li.distance(0, 1) == doctest::Approx(4.0));
  CHECK(e.distance(1, 2) == e.distance(2, 1));
  CHECK(e.distance(2, 2) == 0);
  CHECK(e.size() == 3);
  CHECK(e.base_point() == 0);
  CHECK(e.weight(1) == 1.0);
}

TEST_CASE("open balls: strict inequality, ascending order, volume") {
  auto s = build_space(parse_space_tag("line:n=9,spacing=1"));
  // base point is the left end of the line
  auto b = ball_points(s, s.base_point(), 2.0);
  REQUIRE(b.size() == 2);
  CHECK(std::is_sorted(b.begin(), b.end()));
  for (auto p : b) CHECK(s.distance(s.base_point(), p) < 2.0);
  CHECK(ball_volume(s, s.base_point(), 2.0) == doctest::Approx(2.0));
  auto half = ball_points(s, s.base_point(), 2.5);
  CHECK(half.size() == 3);
}

TEST_CASE("graph path metric") {
  auto g = MetricMeasureSpace::graph(
      4, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 1.0}}, {1, 1, 1, 1}, 0, 8, false,
      "path");
  CHECK(g.distance(0, 3) == doctest::Approx(4.0));
  CHECK(g.distance(0, 2) == doctest::Approx(3.0));
  CHECK(g.adjacency().size() == 4);
  CHECK(g.adjacency()[1].size() == 2);
}

TEST_CASE("product metadata and metric") {
  auto a = build_space(parse_space_tag("lattice:d=1,budget=8"));
  auto b = build_space(parse_space_tag("lattice:d=1,budget=16"));
  auto p = MetricMeasureSpace::product({a, b}, "prod");
  CHECK(p.size() == a.size() * b.size());
  CHECK(p.radius_budget() == doctest::Approx(8.0));
  CHECK(p.integer_metric());
}

TEST_CASE("disjoint union metadata") {
  auto a = build_space(parse_space_tag("lattice:d=1,budget=16"));
  auto b = build_space(parse_space_tag("lattice:d=1,budget=8"));
  auto u = MetricMeasureSpace::disjoint_union({a, b}, 4.0, "union");
  CHECK(u.size() == a.size() + b.size());
  CHECK(u.integer_metric());
  CHECK(u.radius_budget() == doctest::Approx(12.0));
  double cross = u.distance(0, a.size());
  CHECK(cross >= 4.0);
}

TEST_CASE("analytic spaces reject enumerable oracles and vice versa") {
  auto end = build_space(parse_space_tag("standard_end:N=2,D=2"));
  CHECK(!end.enumerable());
  CHECK_THROWS_AS(end.size(), std::logic_error);
  CHECK_THROWS_AS(end.distance(0, 1), std::logic_error);
  CHECK(end.horizon() > 100);
  CHECK(ball_volume(end, 10.0) > 0);

  auto lat = build_space(parse_space_tag("lattice:d=1"));
  CHECK_THROWS_AS(lat.volume_profile(2.0), std::logic_error);
}

TEST_CASE("torus distances wrap") {
  auto t = MetricMeasureSpace::torus(1, 8, "t");
  CHECK(t.size() == 8);
  CHECK(t.distance(0, 7) == doctest::Approx(1.0));
  CHECK(t.distance(0, 4) == doctest::Approx(4.0));
  CHECK(t.integer_metric());
}
