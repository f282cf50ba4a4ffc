#include "doctest.h"

#include "hypsurf/experiment.hpp"
#include "hypsurf/metrics.hpp"
#include "hypsurf/random.hpp"
#include "hypsurf/random.hpp"

#include <cmath>

using namespace hypsurf;

namespace {

ModularElement random_member(Rng& rng, const SubgroupSpec& spec) {
  const ModularElement gens[] = {ModularElement::S(), ModularElement::T(), ModularElement::T_inv()};
  for (;;) {
    ModularElement g;
    int length = 1 + static_cast<int>(rng.below(10));
    for (int k = 0; k < length; ++k) g = g * gens[rng.below(3)];
    if (spec.contains(g)) return g;
  }
}

}  // namespace

TEST_CASE("surface_distance_oracle examples") {
  auto full = SubgroupSpec::full();
  CHECK(surface_distance_oracle(UHPoint(0, 2), UHPoint(0, 2), full).exact_value() == 2);
  CHECK(surface_distance_oracle(UHPoint(0, 2), UHPoint(1, 2), full).exact_value() == 2);
  auto key = surface_distance_oracle(UHPoint(0, 2), UHPoint(0, 3), full);
  CHECK(key.exact_value() == Rational(13, 6));
  CHECK(key.distance() == doctest::Approx(std::log(1.5)));
  auto g2 = SubgroupSpec::principal(2);
  CHECK(surface_distance_oracle(UHPoint(0, 2), UHPoint(1, 2), g2).exact_value() == Rational(9, 4));
  CHECK(surface_distance_oracle(UHPoint(0, 2), UHPoint(2, 2), g2).exact_value() == 2);
}

TEST_CASE("realisers of the minimum") {
  auto m = surface_minimum_oracle(UHPoint(Rational(-1, 2), Rational(3)), UHPoint(Rational(1, 2), Rational(3)),
                                  SubgroupSpec::full());
  CHECK(m.value.exact_value() == 2);
  CHECK(m.realisers == std::vector<ModularElement>{ModularElement::T_inv()});
  auto i = surface_minimum_oracle(UHPoint(0, 1), UHPoint(0, 1), SubgroupSpec::full());
  CHECK(i.realisers == std::vector<ModularElement>{ModularElement::identity(), ModularElement::S()});
}

TEST_CASE("surface_distance_cover examples") {
  auto full = SubgroupSpec::full();
  auto fu = cover_Fu(full);
  UHPoint p(Rational(1, 4), Rational(3));
  CHECK(surface_distance_cover(p, p, fu).exact_value() == 2);
  UHPoint a(Rational(0), Rational(5, 2)), b(Rational(1, 2), Rational(3));
  CHECK(surface_distance_cover(a, b, fu) == surface_distance_oracle(a, b, full));
  CHECK(surface_distance_cover(a, b, fu).is_exact());
  auto fo = cover_Fo(full);
  UHPoint i(0, 1), near_rho(Rational(-49, 100), Rational(88, 100));
  CHECK(surface_distance_cover(i, near_rho, fo).exact_value() ==
        surface_distance_oracle(i, near_rho, full).exact_value());
  CHECK_THROWS_AS(surface_distance_cover(UHPoint(0, 1), b, fu), std::invalid_argument);
  CHECK_THROWS_AS(surface_distance_cover(UHPoint(0, 3), i, fo), std::invalid_argument);
}

TEST_CASE("cover and oracle agree on sampled pairs") {
  for (const char* name : {"full", "gamma:2"}) {
    auto spec = SubgroupSpec::parse(name);
    for (const auto& cover : {cover_Fu(spec), cover_Fo(spec)}) {
      auto diffs = difference_set(cover);
      auto pts = sample_region(cover.region, 64, 17);
      for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
        auto via = surface_distance_cover(pts[k], pts[k + 1], cover, diffs);
        auto truth = surface_distance_oracle(pts[k], pts[k + 1], spec);
        REQUIRE(via.exact_value() == truth.exact_value());
      }
    }
  }
}

TEST_CASE("difference set") {
  auto diffs = difference_set(cover_Fu(SubgroupSpec::full()));
  CHECK(diffs.size() == 5);
  CHECK(std::is_sorted(diffs.begin(), diffs.end()));
}

TEST_CASE("metric axioms of the surface distance") {
  Rng rng(31);
  auto full = SubgroupSpec::full();
  auto pts = sample_points(full, 60, Sampler::RationalGrid, 5);
  for (std::size_t k = 0; k + 2 < pts.size(); k += 3) {
    const auto &a = pts[k], &b = pts[k + 1], &c = pts[k + 2];
    auto ab = surface_distance_oracle(a, b, full);
    CHECK(ab.exact_value() == surface_distance_oracle(b, a, full).exact_value());
    bool same = reduce_to_F(a).point == reduce_to_F(b).point;
    CHECK((ab.exact_value() == 2) == same);
    double dab = ab.distance(), dbc = surface_distance_oracle(b, c, full).distance();
    double dac = surface_distance_oracle(a, c, full).distance();
    CHECK(dac <= dab + dbc + 1e-9);
  }
  // A point and a translate of it are the same surface point.
  UHPoint z(Rational(3, 11), Rational(7, 5));
  CHECK(surface_distance_oracle(z, mobius_apply(ModularElement(2, 1, 5, 3), z), full).exact_value() == 2);
}

TEST_CASE("surface distance is invariant under the subgroup") {
  Rng rng(32);
  for (const char* name : {"full", "gamma:2", "gamma0:3"}) {
    auto spec = SubgroupSpec::parse(name);
    auto pts = sample_points(spec, 20, Sampler::RationalGrid, 6);
    for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
      auto base = surface_distance_oracle(pts[k], pts[k + 1], spec);
      auto g1 = random_member(rng, spec), g2 = random_member(rng, spec);
      auto moved = surface_distance_oracle(mobius_apply(g1, pts[k]), mobius_apply(g2, pts[k + 1]), spec);
      REQUIRE(moved.exact_value() == base.exact_value());
    }
  }
}

TEST_CASE("smaller groups give longer distances") {
  auto full = SubgroupSpec::full();
  auto pts = sample_points(SubgroupSpec::principal(2), 40, Sampler::RationalGrid, 8);
  for (const char* name : {"gamma:2", "gamma0:2"}) {
    auto spec = SubgroupSpec::parse(name);
    for (std::size_t k = 0; k + 1 < pts.size(); k += 2)
      CHECK(surface_distance_oracle(pts[k], pts[k + 1], spec).exact_value() >=
            surface_distance_oracle(pts[k], pts[k + 1], full).exact_value());
  }
}

TEST_CASE("engine matches the oracle") {
  for (const char* name : {"full", "gamma:2", "gamma0:3", "gamma1:4"}) {
    auto spec = SubgroupSpec::parse(name);
    SurfaceDistanceEngine engine(spec);
    auto pts = sample_points(spec, 40, Sampler::RationalGrid, 12);
    for (std::size_t k = 0; k < pts.size(); ++k)
      for (std::size_t l = k + 1; l < pts.size(); l += 3) {
        auto p = engine.prepare(pts[k]), q = engine.prepare(pts[l]);
        auto truth = surface_distance_oracle(pts[k], pts[l], spec);
        REQUIRE(engine.min_key(p, q).exact_value() == truth.exact_value());
        REQUIRE(approx_same_distance(engine.min_two_cosh(p, q), truth.two_cosh()));
      }
  }
}

TEST_CASE("distance_stats examples") {
  auto full = SubgroupSpec::full();
  std::vector<UHPoint> two{UHPoint(0, 2), UHPoint(0, 3)};
  auto s = distance_stats(two, full);
  CHECK(s.distinct == 1);
  CHECK(s.quadruples == 4);
  CHECK(s.cauchy_schwarz_bound() == 1);

  std::vector<UHPoint> three{UHPoint(0, 2), UHPoint(0, 3), UHPoint(0, 5)};
  s = distance_stats(three, full);
  CHECK(s.distinct == 3);
  CHECK(s.quadruples == 12);
  CHECK(s.cauchy_schwarz_bound() == 3);

  // Equally spaced around the cusp at one height.
  std::vector<UHPoint> equilateral{UHPoint(Rational(0), Rational(2)), UHPoint(Rational(1, 3), Rational(2)),
                                   UHPoint(Rational(2, 3), Rational(2))};
  s = distance_stats(equilateral, full);
  CHECK(s.distinct == 1);
  CHECK(s.quadruples == 36);
  CHECK(s.cauchy_schwarz_bound() == 1);
  CHECK(s.cauchy_schwarz_holds());
}

TEST_CASE("repeated surface points collapse") {
  auto full = SubgroupSpec::full();
  std::vector<UHPoint> pts{UHPoint(0, 2), UHPoint(1, 2), UHPoint(0, 3), UHPoint(Rational(0), Rational(1, 2))};
  auto s = distance_stats(pts, full);
  CHECK(s.input_points == 4);
  CHECK(s.points == 2);
  CHECK(s.collapsed == 2);
  CHECK(s.ordered_pairs == 2);
  auto r = distance_stats_serial(pts, full);
  CHECK(r.points == 2);
  CHECK(r.distinct == s.distinct);
}

TEST_CASE("fast statistics equal the serial reference") {
  for (const char* name : {"full", "gamma:2", "gamma0:3"}) {
    auto spec = SubgroupSpec::parse(name);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto pts = sample_points(spec, 50, Sampler::RationalGrid, seed);
      pts.push_back(pts.front());
      auto fast = distance_stats(pts, spec);
      auto slow = distance_stats_serial(pts, spec);
      REQUIRE(fast.points == slow.points);
      REQUIRE(fast.distinct == slow.distinct);
      REQUIRE(fast.quadruples == slow.quadruples);
      REQUIRE(fast.multiplicities.size() == slow.multiplicities.size());
      for (std::size_t k = 0; k < fast.multiplicities.size(); ++k) {
        REQUIRE(fast.multiplicities[k].ordered_pairs == slow.multiplicities[k].ordered_pairs);
        REQUIRE(approx_same_distance(fast.multiplicities[k].two_cosh, slow.multiplicities[k].two_cosh));
      }
    }
  }
}

TEST_CASE("Cauchy-Schwarz identities") {
  auto spec = SubgroupSpec::principal(2);
  auto pts = sample_points(spec, 120, Sampler::RationalGrid, 77);
  auto s = distance_stats(pts, spec);
  std::uint64_t n = s.points;
  std::uint64_t sum = 0, sq = 0;
  for (const auto& m : s.multiplicities) {
    sum += m.ordered_pairs;
    sq += m.ordered_pairs * m.ordered_pairs;
  }
  CHECK(sum == n * n - n);
  CHECK(s.ordered_pairs == sum);
  CHECK(s.quadruples == sq);
  CHECK(s.cauchy_schwarz_holds());
  CHECK(Rational(s.distinct) >= s.cauchy_schwarz_bound());
}

TEST_CASE("floating inputs") {
  auto full = SubgroupSpec::full();
  std::vector<UHPoint> pts{UHPoint::approx(0.1, 1.3), UHPoint::approx(-0.2, 2.7), UHPoint::approx(0.31, 1.01)};
  auto fast = distance_stats(pts, full);
  auto slow = distance_stats_serial(pts, full);
  CHECK(fast.distinct == slow.distinct);
  CHECK(fast.quadruples == slow.quadruples);
}

TEST_CASE("plane quadruples") {
  std::vector<UHPoint> two{UHPoint(0, 1), UHPoint(0, 2)};
  CHECK(quadruple_count_H2(two) == 4);
  std::vector<UHPoint> line{UHPoint(0, 1), UHPoint(0, 2), UHPoint(0, 4)};
  CHECK(quadruple_count_H2(line) == 20);
  auto s = plane_distance_stats(line);
  CHECK(s.distinct == 2);
  CHECK(s.multiplicities.front().ordered_pairs == 4);
  CHECK(s.multiplicities.back().ordered_pairs == 2);
  CHECK(quadruple_count_H2(std::vector<UHPoint>{}) == 0);
}
