#include "hypsurf/covers.hpp"

#include "hypsurf/metrics.hpp"
#include "hypsurf/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hypsurf {

namespace {

constexpr long kGrid = 10'000;
constexpr std::size_t kMaxDraws = 1'000'000;

Rational snap(double v) { return Rational(static_cast<long>(std::llround(v * kGrid)), kGrid); }

// Rational lying on the region side of an irrational boundary value.
Rational round_up(double v) {
  return Rational(static_cast<long>(std::ceil(v * 1e6)), 1'000'000);
}

const Rational kInset(1, 1'000'000);

// y distributed with density proportional to 1/y^2 on [lo, hi].
double sample_height(Rng& rng, double lo, double hi) {
  double inv = rng.uniform(1.0 / hi, 1.0 / lo);
  return 1.0 / inv;
}

std::vector<ModularElement> sorted(std::vector<ModularElement> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<UHPoint> landmarks_of_F(double y_cap) {
  const double rho_y = std::sqrt(3.0) / 2.0;
  const Rational half(1, 2);
  Rational low = round_up(rho_y);
  Rational cap = snap(y_cap);
  Rational mid = round_up((rho_y + y_cap) / 2.0);
  return {UHPoint(-half, low), UHPoint(half, low), UHPoint(Rational(0), Rational(1)),
          UHPoint(-half, cap), UHPoint(half, cap), UHPoint(Rational(0), cap),
          UHPoint(-half, mid), UHPoint(half, mid)};
}

}  // namespace

std::string to_string(CoverProvenance p) {
  switch (p) {
    case CoverProvenance::Translation: return "translation-cover";
    case CoverProvenance::Ball: return "ball-cover";
    case CoverProvenance::GenericCentral: return "generic-central";
  }
  return "?";
}

bool GeodesicCover::contains(const ModularElement& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

const SplitConstants& SplitConstants::get() {
  static const SplitConstants constants = [] {
    const long double sqrt3 = std::sqrt(3.0L);
    const long double pi = std::numbers::pi_v<long double>;
    const long double cosh_diam = 23.0L * sqrt3 / 24.0L;
    const long double cosh_r0 = 5.0L * sqrt3 / 6.0L;
    const long double cosh_2r0 = 2.0L * cosh_r0 * cosh_r0 - 1.0L;
    const long double cosh_3r0 = 4.0L * cosh_r0 * cosh_r0 * cosh_r0 - 3.0L * cosh_r0;

    SplitConstants c{};
    c.cosh_diam_Fo = static_cast<double>(cosh_diam);
    c.cosh_r0 = static_cast<double>(cosh_r0);
    c.area_F = static_cast<double>(pi / 3.0L);
    c.area_Fu = 0.5;
    c.area_Fo = static_cast<double>(pi / 3.0L - 0.5L);
    c.cover_radius_cosh = static_cast<double>(cosh_of_sum(cosh_diam, cosh_2r0));
    c.disc_radius_cosh = static_cast<double>(cosh_of_sum(cosh_diam, cosh_3r0));
    c.area_disc = disc_area(std::acosh(c.cosh_diam_Fo) + 3.0 * std::acosh(c.cosh_r0));
    c.area_disc_closed =
        static_cast<double>(pi / 36.0L * (848.0L + 11.0L * std::sqrt(4381.0L)));
    c.area_ratio = c.area_disc / c.area_Fo;
    c.bound = 252;
    return c;
  }();
  return constants;
}

double enumeration_threshold(double cosh_value) { return cosh_value + 1e-9; }

GeodesicCover cover_Fu(const SubgroupSpec& spec) {
  std::vector<ModularElement> elements;
  for (std::int64_t n : {-1, 0, 1}) {
    auto g = ModularElement::translation(n);
    if (spec.contains(g)) elements.push_back(g);
  }
  return {Region::cusp(), spec, sorted(std::move(elements)), CoverProvenance::Translation};
}

GeodesicCover cover_Fo(const SubgroupSpec& spec) {
  const auto& k = SplitConstants::get();
  UHPoint base(Rational(0), Rational(2));
  BallQuery query{spec, base, base, enumeration_threshold(k.cover_radius_cosh), std::nullopt};
  return {Region::central(), spec, enumerate_ball(query), CoverProvenance::Ball};
}

double region_cosh_diameter(const Region& region) {
  switch (region.kind()) {
    case RegionKind::Central:
      if (region.cusp_height() == 2) return SplitConstants::get().cosh_diam_Fo;
      {
        // Same corner pair at a different cusp height U.
        double u = region.cusp_height().get_d();
        return two_cosh(-0.5, std::sqrt(3.0) / 2.0, 0.5, u) / 2.0;
      }
    case RegionKind::Disc:
      return std::cosh(2.0 * region.radius());
    default:
      throw std::invalid_argument("region " + region.name() + " is unbounded");
  }
}

double numeric_cosh_diameter_Fo(int samples_per_edge) {
  std::vector<std::pair<double, double>> boundary;
  const double rho_y = std::sqrt(3.0) / 2.0;
  for (int i = 0; i <= samples_per_edge; ++i) {
    double t = static_cast<double>(i) / samples_per_edge;
    boundary.emplace_back(-0.5, rho_y + t * (2.0 - rho_y));
    boundary.emplace_back(0.5, rho_y + t * (2.0 - rho_y));
    boundary.emplace_back(-0.5 + t, 2.0);
    double theta = std::numbers::pi * (2.0 / 3.0 - t / 3.0);
    boundary.emplace_back(std::cos(theta), std::sin(theta));
  }
  double best = 1.0;
  for (std::size_t i = 0; i < boundary.size(); ++i)
    for (std::size_t j = i + 1; j < boundary.size(); ++j)
      best = std::max(best, two_cosh(boundary[i].first, boundary[i].second, boundary[j].first,
                                     boundary[j].second) /
                                2.0);
  return best;
}

GeodesicCover cover_central_generic(const SubgroupSpec& spec, const Region& region,
                                    const UHPoint& base) {
  if (!region.bounded()) throw std::invalid_argument("generic cover needs a bounded region");
  if (!region.closure_contains(base)) throw std::invalid_argument("base point must lie in the region");
  BallQuery stabiliser{spec, base, base, 1.0, std::nullopt};
  if (enumerate_ball(stabiliser).size() > 1)
    throw std::invalid_argument("base point " + base.to_string() +
                                " is fixed by a nontrivial element");
  double c = region_cosh_diameter(region);
  double cosh_triple = 4.0 * c * c * c - 3.0 * c;
  BallQuery query{spec, base, base, enumeration_threshold(cosh_triple), std::nullopt};
  return {region, spec, enumerate_ball(query), CoverProvenance::GenericCentral};
}

StripCover cover_strip(double T, double c_min) {
  if (!(T > 0.0)) throw std::invalid_argument("strip height T must be positive");
  if (!(c_min > 0.0)) throw std::invalid_argument("c_min must be positive");
  return {{ModularElement::T_inv(), ModularElement::identity(), ModularElement::T()},
          T >= 100.0 + 10.0 / c_min};
}

std::vector<UHPoint> region_landmarks(const Region& region, double y_cap) {
  std::vector<UHPoint> marks;
  const Rational half(1, 2);
  switch (region.kind()) {
    case RegionKind::Fundamental:
      marks = landmarks_of_F(y_cap);
      break;
    case RegionKind::Cusp: {
      const Rational& u = region.cusp_height();
      Rational cap = std::max(snap(y_cap), u);
      Rational mid = (u + cap) / 2;
      marks = {UHPoint(-half, u),   UHPoint(half, u),   UHPoint(Rational(0), u),
               UHPoint(-half, cap), UHPoint(half, cap), UHPoint(Rational(0), cap),
               UHPoint(-half, mid), UHPoint(half, mid)};
      break;
    }
    case RegionKind::Central: {
      const double rho_y = std::sqrt(3.0) / 2.0;
      Rational low = round_up(rho_y);
      Rational top = region.cusp_height() - kInset;
      Rational mid = round_up((rho_y + region.cusp_height().get_d()) / 2.0);
      marks = {UHPoint(-half, low),          UHPoint(half, low),   UHPoint(-half, top),
               UHPoint(half, top),           UHPoint(Rational(0), Rational(1)),
               UHPoint(Rational(0), top),    UHPoint(-half, mid),  UHPoint(half, mid),
               UHPoint(Rational(-1, 4), round_up(std::sqrt(15.0) / 4.0)),
               UHPoint(Rational(1, 4), round_up(std::sqrt(15.0) / 4.0))};
      break;
    }
    case RegionKind::Translate:
      for (const auto& z : landmarks_of_F(y_cap)) marks.push_back(mobius_apply(region.alpha(), z));
      break;
    case RegionKind::Disc: {
      marks.push_back(region.center().is_exact()
                          ? region.center()
                          : UHPoint::exact_from(region.center().x(), region.center().y()));
      if (region.radius() > 0.0) {
        double r = region.radius() * (1.0 - 1e-6);
        double cx = region.center().x(), cy = region.center().y();
        double ey = cy * std::cosh(r), er = cy * std::sinh(r);
        for (int k = 0; k < 4; ++k) {
          double theta = std::numbers::pi * k / 2.0;
          marks.push_back(UHPoint(snap(cx + er * std::cos(theta)), snap(ey + er * std::sin(theta))));
        }
      }
      break;
    }
    case RegionKind::Strip: {
      double T = region.strip_height();
      for (double x : {0.25, 0.5, 0.75})
        for (double y : {T, T * 2.0})
          marks.push_back(mobius_apply(region.cusp_scaling(), UHPoint::approx(x, y)));
      break;
    }
  }
  std::vector<UHPoint> inside;
  for (auto& z : marks)
    if (region.contains(z)) inside.push_back(std::move(z));
  return inside;
}

std::vector<UHPoint> sample_region(const Region& region, std::size_t count, std::uint64_t seed,
                                   double y_cap) {
  Rng rng(seed);
  std::vector<UHPoint> out;
  out.reserve(count);
  const double rho_y = std::sqrt(3.0) / 2.0;
  std::size_t draws = 0;

  auto draw = [&]() -> std::optional<UHPoint> {
    if (++draws > kMaxDraws * std::max<std::size_t>(1, count))
      throw std::runtime_error("rejection sampling failed for region " + region.name());
    switch (region.kind()) {
      case RegionKind::Fundamental:
      case RegionKind::Translate: {
        double x = rng.uniform(-0.5, 0.5);
        double y = sample_height(rng, rho_y, y_cap);
        UHPoint z(snap(x), snap(y));
        if (!in_closed_F(z)) return std::nullopt;
        if (region.kind() == RegionKind::Translate) z = mobius_apply(region.alpha(), z);
        return z;
      }
      case RegionKind::Cusp: {
        double u = region.cusp_height().get_d();
        double x = rng.uniform(-0.5, 0.5);
        double y = sample_height(rng, u, std::max(u, y_cap));
        return UHPoint(snap(x), snap(y));
      }
      case RegionKind::Central: {
        double x = rng.uniform(-0.5, 0.5);
        double y = sample_height(rng, rho_y, region.cusp_height().get_d());
        return UHPoint(snap(x), snap(y));
      }
      case RegionKind::Disc: {
        double cx = region.center().x(), cy = region.center().y(), r = region.radius();
        if (r == 0.0)
          return region.center().is_exact() ? region.center()
                                             : UHPoint::exact_from(cx, cy);
        double ey = cy * std::cosh(r), er = cy * std::sinh(r);
        double x = rng.uniform(cx - er, cx + er);
        double y = sample_height(rng, ey - er, ey + er);
        return UHPoint(snap(x), snap(y));
      }
      case RegionKind::Strip: {
        double T = region.strip_height();
        double x = rng.uniform(0.0, 1.0);
        double y = sample_height(rng, T, std::max(T * 1.0001, T * y_cap));
        return mobius_apply(region.cusp_scaling(), UHPoint::approx(x, y));
      }
    }
    return std::nullopt;
  };

  while (out.size() < count) {
    auto z = draw();
    if (z && region.contains(*z)) out.push_back(std::move(*z));
  }
  return out;
}

VerificationReport verify_cover(const GeodesicCover& cover, std::size_t samples,
                                std::uint64_t seed) {
  VerificationReport report;
  report.seed = seed;

  std::vector<std::pair<UHPoint, UHPoint>> pairs;
  auto marks = region_landmarks(cover.region);
  for (const auto& p : marks)
    for (const auto& q : marks) pairs.emplace_back(p, q);
  auto pts = sample_region(cover.region, 2 * samples, seed);
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) pairs.emplace_back(pts[i], pts[i + 1]);

  const auto differences = difference_set(cover);
  struct Outcome {
    DistanceKey via_cover = DistanceKey::approx(2.0);
    SurfaceMinimum truth{DistanceKey::approx(2.0), {}};
  };
  std::vector<Outcome> outcomes(pairs.size());

#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [p, q] = pairs[i];
    outcomes[i].via_cover = surface_distance_cover(p, q, cover, differences);
    outcomes[i].truth = surface_minimum_oracle(p, q, cover.spec);
  }

  std::vector<ModularElement> missing;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& out = outcomes[i];
    double gap = 0.0;
    if (out.via_cover.is_exact() && out.truth.value.is_exact()) {
      Rational diff = out.via_cover.exact_value() - out.truth.value.exact_value();
      gap = diff.get_d();
      if (sgn(diff) != 0) gap = std::max(gap, 1e-300);
    } else {
      gap = out.via_cover.two_cosh() - out.truth.value.two_cosh();
      if (out.via_cover == out.truth.value) gap = 0.0;
    }
    report.worst_gap = std::max(report.worst_gap, gap);
    if (gap != 0.0 && report.pass) {
      report.pass = false;
      report.first_failure =
          CoverFailure{pairs[i].first, pairs[i].second, out.via_cover, out.truth.value};
    }
    for (const auto& g : out.truth.realisers)
      if (!cover.contains(g)) missing.push_back(g);
  }
  report.pairs = pairs.size();
  report.missing_realisers = sorted(std::move(missing));
  return report;
}

}  // namespace hypsurf
