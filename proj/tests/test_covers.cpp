#include "doctest.h"

#include "hypsurf/covers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace hypsurf;

namespace {

const ModularElement kI = ModularElement::identity();
const ModularElement kT = ModularElement::T();
const ModularElement kTi = ModularElement::T_inv();

}  // namespace

TEST_CASE("split constants") {
  const auto& c = SplitConstants::get();
  const double s3 = std::sqrt(3.0);
  CHECK(std::abs(c.cosh_diam_Fo - 23 * s3 / 24) < 1e-15);
  CHECK(std::abs(c.cosh_r0 - 5 * s3 / 6) < 1e-15);
  CHECK(std::abs(c.area_Fo - (std::numbers::pi / 3 - 0.5)) < 1e-15);
  CHECK(std::abs(c.disc_radius_cosh - (920 + 11 * std::sqrt(4381.0)) / 72) < 1e-12);
  CHECK(std::abs(c.area_disc - c.area_disc_closed) < 1e-9);
  CHECK(c.area_disc == doctest::Approx(137.5389).epsilon(1e-6));
  CHECK(std::floor(c.area_ratio) <= 252);
  CHECK(c.cover_radius_cosh == doctest::Approx(9.23695).epsilon(1e-6));
  CHECK(enumeration_threshold(2.0) > 2.0);
}

TEST_CASE("cover_Fu examples") {
  auto full = cover_Fu(SubgroupSpec::full());
  CHECK(full.elements == std::vector<ModularElement>{kTi, kI, kT});
  CHECK(cover_Fu(SubgroupSpec::principal(2)).elements == std::vector<ModularElement>{kI});
  CHECK(cover_Fu(SubgroupSpec::hecke(2)).elements == std::vector<ModularElement>{kTi, kI, kT});
}

TEST_CASE("cover_Fu is the full cover intersected with the subgroup") {
  auto full = cover_Fu(SubgroupSpec::full());
  for (const char* name : {"gamma:2", "gamma:3", "gamma0:4", "gamma1:5", "gamma:6"}) {
    auto spec = SubgroupSpec::parse(name);
    std::vector<ModularElement> expect;
    for (const auto& g : full.elements)
      if (spec.contains(g)) expect.push_back(g);
    CHECK(cover_Fu(spec).elements == expect);
    CHECK(cover_Fu(spec).contains(kI));
  }
}

TEST_CASE("cover_Fo examples") {
  auto full = cover_Fo(SubgroupSpec::full());
  CHECK(full.size() == 58);
  CHECK(full.size() <= static_cast<std::size_t>(SplitConstants::get().bound));
  CHECK(full.contains(kI));
  auto g2 = cover_Fo(SubgroupSpec::principal(2));
  std::vector<ModularElement> filtered;
  for (const auto& g : full.elements)
    if (SubgroupSpec::principal(2).contains(g)) filtered.push_back(g);
  CHECK(g2.elements == filtered);
  CHECK(g2.size() == 11);
}

TEST_CASE("cover_Fo does not depend on the corner pair used for the diameter") {
  // The bottom corners rho, rho + 1 are farther apart (cosh = 5/3) than the
  // pair behind the closed form; the wider ball gives the same elements.
  const auto& c = SplitConstants::get();
  CHECK(cosh_distance(UHPoint::approx(-0.5, std::sqrt(3.0) / 2), UHPoint::approx(0.5, std::sqrt(3.0) / 2))
            .cosh() == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  double wide = static_cast<double>(cosh_of_sum(5.0L / 3.0L, 2 * (long double)c.cosh_r0 * c.cosh_r0 - 1));
  auto ball = enumerate_ball({SubgroupSpec::full(), UHPoint(0, 2), UHPoint(0, 2), enumeration_threshold(wide),
                              std::nullopt});
  CHECK(ball == cover_Fo(SubgroupSpec::full()).elements);
}

TEST_CASE("numeric diameter of F_o") {
  CHECK(numeric_cosh_diameter_Fo() == doctest::Approx(5.0 / 3.0).epsilon(1e-9));
  CHECK(numeric_cosh_diameter_Fo() >= SplitConstants::get().cosh_diam_Fo);
  CHECK(region_cosh_diameter(Region::central()) == doctest::Approx(SplitConstants::get().cosh_diam_Fo));
  CHECK(region_cosh_diameter(Region::disc(UHPoint(0, 2), 0.5)) == doctest::Approx(std::cosh(1.0)));
  CHECK_THROWS_AS(region_cosh_diameter(Region::cusp()), std::invalid_argument);
}

TEST_CASE("cover_central_generic") {
  auto full = SubgroupSpec::full();
  auto generic = cover_central_generic(full, Region::central(), UHPoint(0, 2));
  CHECK(generic.contains(kI));
  auto fo = cover_Fo(full).elements;
  CHECK(std::includes(generic.elements.begin(), generic.elements.end(), fo.begin(), fo.end()));
  auto report = verify_cover(generic, 300, 7);
  CHECK(report.pass);
  CHECK(report.missing_realisers.empty());

  auto point = cover_central_generic(full, Region::disc(UHPoint(Rational(1, 10), Rational(2)), 0.0),
                                     UHPoint(Rational(1, 10), Rational(2)));
  CHECK(point.elements == std::vector<ModularElement>{kI});

  CHECK_THROWS_AS(cover_central_generic(full, Region::central(), UHPoint(0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(cover_central_generic(full, Region::cusp(), UHPoint(0, 3)), std::invalid_argument);
  CHECK_THROWS_AS(cover_central_generic(full, Region::central(), UHPoint(0, 5)), std::invalid_argument);
}

TEST_CASE("cover_strip examples") {
  auto s = cover_strip(110.0, 1.0);
  CHECK(s.certified);
  CHECK(s.elements == std::vector<ModularElement>{kTi, kI, kT});
  auto low = cover_strip(2.0, 1.0);
  CHECK_FALSE(low.certified);
  CHECK(low.elements == cover_Fu(SubgroupSpec::full()).elements);
  CHECK_THROWS_AS(cover_strip(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("verify_cover examples") {
  auto full = SubgroupSpec::full();
  auto fu = verify_cover(cover_Fu(full), 1000, 7);
  CHECK(fu.pass);
  CHECK(fu.seed == 7);
  CHECK(fu.pairs >= 1000);
  CHECK(verify_cover(cover_Fo(full), 1000, 7).pass);

  GeodesicCover bad{Region::central(), full, {kI}, CoverProvenance::Ball};
  auto report = verify_cover(bad, 1000, 7);
  CHECK_FALSE(report.pass);
  CHECK(report.worst_gap > 0.0);
  REQUIRE(report.first_failure.has_value());
  CHECK(report.first_failure->via_cover > report.first_failure->true_distance);
}

TEST_CASE("verification is deterministic and superset stable") {
  auto g2 = SubgroupSpec::principal(2);
  auto cover = cover_Fo(g2);
  auto a = verify_cover(cover, 200, 3);
  auto b = verify_cover(cover, 200, 3);
  CHECK(a.pass);
  CHECK(a.pairs == b.pairs);
  CHECK(a.worst_gap == b.worst_gap);
  // A superset within Gamma from a wider ball.
  auto extra = enumerate_ball({g2, UHPoint(0, 2), UHPoint(0, 2), 40.0, std::nullopt});
  auto superset = cover;
  superset.elements = extra;
  CHECK(verify_cover(superset, 200, 3).pass);
}

TEST_CASE("samples and landmarks stay in the region") {
  for (const auto& region : {Region::central(), Region::cusp(), Region::fundamental()}) {
    for (const auto& z : sample_region(region, 500, 4)) {
      CHECK(z.is_exact());
      CHECK(region.contains(z));
    }
    for (const auto& z : region_landmarks(region)) CHECK(region.contains(z));
  }
  CHECK(sample_region(Region::central(), 50, 9) == sample_region(Region::central(), 50, 9));
}
