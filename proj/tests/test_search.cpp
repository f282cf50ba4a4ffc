#include "doctest.h"

#include "hypsurf/search.hpp"

#include <cmath>

using namespace hypsurf;

TEST_CASE("two points on the vertical geodesic") {
  for (const char* name : {"full", "gamma:2"}) {
    auto spec = SubgroupSpec::parse(name);
    for (double d : {0.2, 0.7, 1.0, 2.5}) {
      auto c = equilateral_search(spec, 2, d);
      REQUIRE(c.has_value());
      CHECK(c->points.size() == 2);
      CHECK(c->residual <= 1e-10);
      CHECK(c->common.two_cosh() == doctest::Approx(2 * std::cosh(d)));
    }
  }
  auto c = equilateral_search(SubgroupSpec::full(), 2, 1.0);
  REQUIRE(c.has_value());
  CHECK(c->points.front() == UHPoint(0, 2));
}

TEST_CASE("triangles") {
  auto full = equilateral_search(SubgroupSpec::full(), 3, 0.4);
  REQUIRE(full.has_value());
  CHECK(full->residual <= 1e-10);
  CHECK(equilateral_residual(full->points, SubgroupSpec::full(), 2 * std::cosh(0.4)) <= 1e-10);

  auto g2 = SubgroupSpec::principal(2);
  auto tri = equilateral_search(g2, 3, 1.0);
  REQUIRE(tri.has_value());
  CHECK(equilateral_residual(tri->points, g2, 2 * std::cosh(1.0)) <= 1e-10);
  SubgroupDomain domain(g2);
  for (const auto& z : tri->points) CHECK(domain.piece_containing(z).has_value());

  // Prefixes of a candidate are candidates.
  std::vector<UHPoint> prefix(tri->points.begin(), tri->points.begin() + 2);
  CHECK(equilateral_residual(prefix, g2, 2 * std::cosh(1.0)) <= 1e-10);
}

TEST_CASE("side length one is out of reach on the modular surface") {
  EquilateralOptions opts;
  opts.budget = 120;
  CHECK_FALSE(equilateral_search(SubgroupSpec::full(), 3, 1.0, opts).has_value());
}

TEST_CASE("search is deterministic per seed") {
  auto a = equilateral_search(SubgroupSpec::principal(2), 3, 0.8);
  auto b = equilateral_search(SubgroupSpec::principal(2), 3, 0.8);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->points == b->points);
}

TEST_CASE("search input errors") {
  CHECK_THROWS_AS(equilateral_search(SubgroupSpec::full(), 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(equilateral_search(SubgroupSpec::full(), 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(equilateral_search(SubgroupSpec::full(), 3, -1.0), std::invalid_argument);
}
