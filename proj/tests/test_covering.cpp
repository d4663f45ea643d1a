#include <doctest.h>

#include <random>
#include <stdexcept>

#include "specdim/covering.hpp"
#include "specdim/spaces.hpp"

using namespace specdim;

namespace {

std::vector<PointRef> whole(const MetricMeasureSpace& s) {
  std::vector<PointRef> v(s.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("five point line counts") {
  auto s = build_space(parse_space_tag("line:n=5,spacing=1"));
  auto region = whole(s);
  CHECK(packing_number(s, region, 1.0) == 3);
  CHECK(covering_exact(s, region, 1.0) == 5);   // open balls, radius 1
  CHECK(covering_exact(s, region, 1.5) == 2);
  CHECK(covering_exact(s, region, 2.0) == 2);
  CHECK(covering_exact(s, region, 5.0) == 1);
  CHECK(covering_upper(s, region, 1.5) >= covering_exact(s, region, 1.5));
}

TEST_CASE("packing is monotone nonincreasing in r") {
  auto s = build_space(parse_space_tag("lattice:d=2,budget=8"));
  auto region = whole(s);
  std::size_t prev = region.size() + 1;
  for (double r : {0.5, 1.0, 1.5, 2.5, 4.5}) {
    std::size_t nu = packing_number(s, region, r);
    CHECK(nu <= prev);
    prev = nu;
  }
}

TEST_CASE("bracket n_r >= nu_r >= n_2r on random point sets") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::uniform_int_distribution<int> count(2, 20);
  std::uniform_real_distribution<double> radius(0.05, 0.6);
  for (int trial = 0; trial < 200; ++trial) {
    int n = count(rng);
    std::vector<std::vector<double>> pts(n);
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    auto s = MetricMeasureSpace::coords(
        std::move(pts), MetricMeasureSpace::CoordMetric::Euclidean,
        std::vector<double>(n, 1.0), 0, 4.0, false, "rand");
    auto region = whole(s);
    double r = radius(rng);
    std::size_t n_r = covering_exact(s, region, r);
    std::size_t nu_r = packing_number(s, region, r);
    std::size_t n_2r = covering_exact(s, region, 2 * r);
    CHECK(n_r >= nu_r);
    CHECK(nu_r >= n_2r);
  }
}

TEST_CASE("exact cover bails out on large regions") {
  auto s = build_space(parse_space_tag("lattice:d=1,budget=20"));
  CHECK_THROWS_AS(covering_exact(s, whole(s), 1.0), std::length_error);
}

TEST_CASE("covering_count aggregates all three") {
  auto s = build_space(parse_space_tag("line:n=5,spacing=1"));
  auto c = covering_count(s, whole(s), 1.5, true);
  CHECK(c.nu == packing_number(s, whole(s), 1.5));
  CHECK(c.n_upper >= *c.n_exact);
  CHECK(*c.n_exact == 2);
}
