#include "hypsurf/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hypsurf {

namespace {

constexpr int kMaxReductionSteps = 1'000'000;

const Rational kHalf(1, 2);

struct Vec2 {
  double x, y;
};

// Unit tangent at v of the geodesic from v toward w; w may be ideal
// (w_y == 0) or the point at infinity.
Vec2 geodesic_tangent(Vec2 v, Vec2 w, bool w_infinite) {
  if (w_infinite) return {0.0, 1.0};
  if (std::abs(w.x - v.x) < 1e-14) return {0.0, w.y > v.y ? 1.0 : -1.0};
  double center = (v.x * v.x + v.y * v.y - w.x * w.x - w.y * w.y) / (2.0 * (v.x - w.x));
  Vec2 t{-v.y, v.x - center};
  if (t.x * (w.x - v.x) + t.y * (w.y - v.y) < 0) t = {-t.x, -t.y};
  double n = std::hypot(t.x, t.y);
  return {t.x / n, t.y / n};
}

double angle_between(Vec2 s, Vec2 t) {
  double c = s.x * t.x + s.y * t.y;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

Region Region::fundamental() { return Region(RegionKind::Fundamental); }

Region Region::cusp(Rational height) {
  if (height < 2) throw std::invalid_argument("cusp height must be at least 2");
  Region r(RegionKind::Cusp);
  r.height_ = std::move(height);
  return r;
}

Region Region::central(Rational height) {
  if (height < 2) throw std::invalid_argument("cusp height must be at least 2");
  Region r(RegionKind::Central);
  r.height_ = std::move(height);
  return r;
}

Region Region::strip(double T, RealMatrix2 cusp_scaling) {
  if (!(T > 0.0)) throw std::invalid_argument("strip height T must be positive");
  Region r(RegionKind::Strip);
  r.strip_T_ = T;
  r.sigma_ = cusp_scaling;
  return r;
}

Region Region::translate(ModularElement alpha) {
  Region r(RegionKind::Translate);
  r.alpha_ = alpha;
  return r;
}

Region Region::disc(UHPoint center, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("disc radius must be non-negative");
  Region r(RegionKind::Disc);
  r.center_ = std::move(center);
  r.radius_ = radius;
  return r;
}

bool Region::bounded() const {
  return kind_ == RegionKind::Central || kind_ == RegionKind::Disc;
}

bool Region::contains(const UHPoint& z) const {
  switch (kind_) {
    case RegionKind::Fundamental:
      return in_closed_F(z);
    case RegionKind::Cusp:
    case RegionKind::Central: {
      Zone zone = classify_in_F(z, height_);
      return zone == (kind_ == RegionKind::Cusp ? Zone::Cusp : Zone::Central);
    }
    case RegionKind::Strip: {
      UHPoint w = mobius_apply(sigma_.inverse(), z);
      return w.x() > 0.0 && w.x() < 1.0 && w.y() >= strip_T_;
    }
    case RegionKind::Translate:
      return in_closed_F(mobius_apply(alpha_.inverse(), z));
    case RegionKind::Disc: {
      double limit = 2.0 * std::cosh(radius_);
      return two_cosh(center_.x(), center_.y(), z.x(), z.y()) <= limit * (1.0 + 1e-12);
    }
  }
  return false;
}

bool Region::closure_contains(const UHPoint& z) const {
  if (kind_ != RegionKind::Central) return contains(z);
  if (!in_closed_F(z)) return false;
  return z.is_exact() ? z.qy() <= height_ : z.y() <= height_.get_d();
}

std::string Region::name() const {
  switch (kind_) {
    case RegionKind::Fundamental: return "F";
    case RegionKind::Cusp: return "fu";
    case RegionKind::Central: return "fo";
    case RegionKind::Strip: return "strip";
    case RegionKind::Translate: return "translate" + alpha_.to_string();
    case RegionKind::Disc: return "disc";
  }
  return "?";
}

bool in_closed_F(const UHPoint& z) {
  if (z.is_exact()) {
    const Rational& x = z.qx();
    const Rational& y = z.qy();
    return abs(x) <= kHalf && x * x + y * y >= 1;
  }
  return std::abs(z.x()) <= 0.5 && z.x() * z.x() + z.y() * z.y() >= 1.0;
}

bool in_reduced_F(const UHPoint& z) {
  if (z.is_exact()) {
    const Rational& x = z.qx();
    const Rational& y = z.qy();
    if (x < -kHalf || x >= kHalf) return false;
    int c = cmp(x * x + y * y, Rational(1));
    return c > 0 || (c == 0 && sgn(x) <= 0);
  }
  double x = z.x(), y = z.y();
  if (x < -0.5 || x >= 0.5) return false;
  double r = x * x + y * y;
  return r > 1.0 || (r == 1.0 && x <= 0.0);
}

Zone classify_in_F(const UHPoint& z, const Rational& height) {
  if (!in_closed_F(z)) return Zone::Outside;
  bool high = z.is_exact() ? z.qy() >= height : z.y() >= height.get_d();
  return high ? Zone::Cusp : Zone::Central;
}

Reduction reduce_to_F(const UHPoint& z) {
  ModularElement gamma;
  if (z.is_exact()) {
    Rational x = z.qx(), y = z.qy();
    for (int step = 0; step < kMaxReductionSteps; ++step) {
      mpz_class n = floor_of(x + kHalf);
      if (n != 0) {
        if (!n.fits_slong_p()) throw std::overflow_error("translation out of range in reduction");
        x -= n;
        gamma = ModularElement::translation(-n.get_si()) * gamma;
      }
      Rational r = x * x + y * y;
      int c = cmp(r, Rational(1));
      if (c < 0 || (c == 0 && sgn(x) > 0)) {
        x = -x / r;
        y = y / r;
        x.canonicalize();
        y.canonicalize();
        gamma = ModularElement::S() * gamma;
        if (c == 0) break;
        continue;
      }
      break;
    }
    return {UHPoint(std::move(x), std::move(y)), gamma};
  }

  double x = z.x(), y = z.y();
  for (int step = 0; step < kMaxReductionSteps; ++step) {
    double n = std::floor(x + 0.5);
    if (n != 0.0) {
      x -= n;
      gamma = ModularElement::translation(-static_cast<std::int64_t>(n)) * gamma;
    }
    double r = x * x + y * y;
    if (r < 1.0 || (r == 1.0 && x > 0.0)) {
      bool on_arc = r == 1.0;
      x = -x / r;
      y = y / r;
      gamma = ModularElement::S() * gamma;
      if (on_arc) break;
      continue;
    }
    break;
  }
  return {UHPoint::approx(x, y), gamma};
}

SubgroupReduction reduce_to_subgroup_domain(const UHPoint& z, const SubgroupSpec& spec) {
  Reduction r = reduce_to_F(z);
  auto cosets = spec.cosets();
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    ModularElement gamma = cosets[i] * r.gamma;
    if (spec.contains(gamma)) return {mobius_apply(cosets[i], r.point), i, gamma};
  }
  throw std::logic_error("coset representatives of " + spec.name() + " are inconsistent");
}

SubgroupDomain::SubgroupDomain(SubgroupSpec spec) : spec_(std::move(spec)) {
  for (const auto& alpha : spec_.cosets()) pieces_.push_back(Region::translate(alpha));
}

std::optional<std::size_t> SubgroupDomain::piece_containing(const UHPoint& z) const {
  auto cosets = spec_.cosets();
  for (std::size_t i = 0; i < cosets.size(); ++i)
    if (in_reduced_F(mobius_apply(cosets[i].inverse(), z))) return i;
  return std::nullopt;
}

double SubgroupDomain::area() const {
  double total = 0.0;
  for (const auto& alpha : spec_.cosets()) total += translate_area(alpha);
  return total;
}

double translate_area(const ModularElement& alpha) {
  const double h = std::sqrt(3.0) / 2.0;
  double u = 0, v = 0;
  mobius_apply(alpha, -0.5, h, u, v);
  Vec2 left{u, v};
  mobius_apply(alpha, 0.5, h, u, v);
  Vec2 right{u, v};
  bool cusp_at_infinity = alpha.c() == 0;
  Vec2 cusp{cusp_at_infinity ? 0.0
                             : static_cast<double>(alpha.a()) / static_cast<double>(alpha.c()),
            0.0};

  double angle_left = angle_between(geodesic_tangent(left, right, false),
                                    geodesic_tangent(left, cusp, cusp_at_infinity));
  double angle_right = angle_between(geodesic_tangent(right, left, false),
                                     geodesic_tangent(right, cusp, cusp_at_infinity));
  return std::numbers::pi - angle_left - angle_right;
}

}  // namespace hypsurf
