#include "hypsurf/hyperbolic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hypsurf {

UHPoint::UHPoint(Rational x, Rational y) {
  x.canonicalize();
  y.canonicalize();
  if (sgn(y) <= 0) throw std::invalid_argument("point must satisfy y > 0");
  x_ = x.get_d();
  y_ = y.get_d();
  exact_ = Exact{std::move(x), std::move(y)};
}

UHPoint UHPoint::approx(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0))
    throw std::invalid_argument("point must be finite with y > 0");
  UHPoint p;
  p.x_ = x;
  p.y_ = y;
  return p;
}

UHPoint UHPoint::exact_from(double x, double y) {
  return UHPoint(exact_from_double(x), exact_from_double(y));
}

const Rational& UHPoint::qx() const {
  if (!exact_) throw std::logic_error("floating point has no exact coordinates");
  return exact_->x;
}

const Rational& UHPoint::qy() const {
  if (!exact_) throw std::logic_error("floating point has no exact coordinates");
  return exact_->y;
}

std::string UHPoint::to_string() const {
  if (exact_) return hypsurf::to_string(exact_->x) + "," + hypsurf::to_string(exact_->y);
  std::ostringstream os;
  os.precision(17);
  os << x_ << "," << y_;
  return os.str();
}

bool operator==(const UHPoint& a, const UHPoint& b) {
  if (a.exact_ && b.exact_) return a.exact_->x == b.exact_->x && a.exact_->y == b.exact_->y;
  return a.x_ == b.x_ && a.y_ == b.y_;
}

UHPoint parse_point(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
    throw std::invalid_argument("point must be written as x,y: " + std::string(text));
  auto xs = parse_scalar(text.substr(0, comma));
  auto ys = parse_scalar(text.substr(comma + 1));
  if (std::holds_alternative<Rational>(xs) && std::holds_alternative<Rational>(ys))
    return UHPoint(std::get<Rational>(xs), std::get<Rational>(ys));
  auto as_double = [](const Scalar& s) {
    return std::holds_alternative<Rational>(s) ? std::get<Rational>(s).get_d()
                                               : std::get<double>(s);
  };
  return UHPoint::approx(as_double(xs), as_double(ys));
}

RealMatrix2::RealMatrix2(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
  if (std::abs(a * d - b * c - 1.0) > 1e-12)
    throw std::invalid_argument("matrix determinant must be 1");
}

RealMatrix2 operator*(const RealMatrix2& m, const RealMatrix2& n) {
  RealMatrix2 r;
  r.a = m.a * n.a + m.b * n.c;
  r.b = m.a * n.b + m.b * n.d;
  r.c = m.c * n.a + m.d * n.c;
  r.d = m.c * n.b + m.d * n.d;
  return r;
}

UHPoint mobius_apply(const RealMatrix2& m, const UHPoint& z) {
  double x = z.x(), y = z.y();
  double re = m.c * x + m.d;
  double im = m.c * y;
  double den = re * re + im * im;
  double u = ((m.a * x + m.b) * re + m.a * m.c * y * y) / den;
  double v = y / den;
  return UHPoint::approx(u, v);
}

DistanceKey DistanceKey::exact(Rational two_cosh) {
  two_cosh.canonicalize();
  DistanceKey k;
  k.value_ = two_cosh.get_d();
  k.exact_ = std::move(two_cosh);
  return k;
}

DistanceKey DistanceKey::approx(double two_cosh) {
  DistanceKey k;
  k.value_ = two_cosh;
  return k;
}

const Rational& DistanceKey::exact_value() const {
  if (!exact_) throw std::logic_error("distance key is not exact");
  return *exact_;
}

double DistanceKey::distance() const {
  double c = value_ / 2.0;
  return c <= 1.0 ? 0.0 : std::acosh(c);
}

std::string DistanceKey::to_string() const {
  if (exact_) return hypsurf::to_string(*exact_);
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

std::weak_ordering operator<=>(const DistanceKey& a, const DistanceKey& b) {
  if (a.exact_ && b.exact_) {
    int c = cmp(*a.exact_, *b.exact_);
    return c < 0 ? std::weak_ordering::less
                 : (c > 0 ? std::weak_ordering::greater : std::weak_ordering::equivalent);
  }
  if (approx_same_distance(a.value_, b.value_)) return std::weak_ordering::equivalent;
  return a.value_ < b.value_ ? std::weak_ordering::less : std::weak_ordering::greater;
}

Rational two_cosh_exact(const Rational& x1, const Rational& y1, const Rational& x2,
                        const Rational& y2) {
  Rational dx = x1 - x2;
  Rational r = (dx * dx + y1 * y1 + y2 * y2) / (y1 * y2);
  r.canonicalize();
  return r;
}

DistanceKey cosh_distance(const UHPoint& z1, const UHPoint& z2) {
  if (z1.is_exact() && z2.is_exact())
    return DistanceKey::exact(two_cosh_exact(z1.qx(), z1.qy(), z2.qx(), z2.qy()));
  return DistanceKey::approx(two_cosh(z1.x(), z1.y(), z2.x(), z2.y()));
}

double hyperbolic_distance(const UHPoint& z1, const UHPoint& z2) {
  return cosh_distance(z1, z2).distance();
}

double disc_area(double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("disc radius must be non-negative");
  return 2.0 * std::numbers::pi * (std::cosh(radius) - 1.0);
}

long double cosh_of_sum(long double cosh_a, long double cosh_b) {
  long double sinh_a = std::sqrt(std::max(0.0L, cosh_a * cosh_a - 1.0L));
  long double sinh_b = std::sqrt(std::max(0.0L, cosh_b * cosh_b - 1.0L));
  return cosh_a * cosh_b + sinh_a * sinh_b;
}

}  // namespace hypsurf
