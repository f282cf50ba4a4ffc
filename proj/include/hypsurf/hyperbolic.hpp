#pragma once

// Upper half-plane primitives. Distances are carried as 2cosh(d), which is
// rational whenever both endpoints are, and is monotone in d.

#include "hypsurf/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace hypsurf {

/// Relative tolerance for comparing floating 2cosh values.
inline constexpr double kDistanceTolerance = 1e-9;

/// A point x + iy with y > 0. Exact points keep rational coordinates and a
/// double shadow of them; floating points only have the shadow.
class UHPoint {
 public:
  UHPoint(Rational x, Rational y);
  static UHPoint approx(double x, double y);
  /// Exact point holding the binary value of the given doubles.
  static UHPoint exact_from(double x, double y);

  bool is_exact() const { return exact_.has_value(); }
  double x() const { return x_; }
  double y() const { return y_; }
  const Rational& qx() const;
  const Rational& qy() const;

  /// Floating copy; drops exactness.
  UHPoint to_approx() const { return approx(x_, y_); }

  std::string to_string() const;

  /// Exact equality for exact points, bitwise double equality otherwise.
  friend bool operator==(const UHPoint& a, const UHPoint& b);

 private:
  UHPoint() = default;
  struct Exact {
    Rational x, y;
  };
  std::optional<Exact> exact_;
  double x_ = 0.0, y_ = 1.0;
};

/// Parses "x,y" where each coordinate is a decimal or "p/q".
UHPoint parse_point(std::string_view text);

/// Real 2x2 matrix with unit determinant acting by Moebius transformation.
struct RealMatrix2 {
  double a = 1, b = 0, c = 0, d = 1;

  RealMatrix2() = default;
  /// Throws std::invalid_argument unless |ad - bc - 1| <= 1e-12.
  RealMatrix2(double a, double b, double c, double d);

  RealMatrix2 inverse() const { return {d, -b, -c, a}; }
  friend RealMatrix2 operator*(const RealMatrix2& m, const RealMatrix2& n);
};

UHPoint mobius_apply(const RealMatrix2& m, const UHPoint& z);

/// A 2cosh(d) value: exact rational when available, else a double.
class DistanceKey {
 public:
  static DistanceKey exact(Rational two_cosh);
  static DistanceKey approx(double two_cosh);

  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact_value() const;
  double two_cosh() const { return value_; }
  double cosh() const { return value_ / 2.0; }
  /// d itself, via arccosh.
  double distance() const;
  std::string to_string() const;

  /// Exact comparison when both keys are exact, toleranced otherwise.
  friend std::weak_ordering operator<=>(const DistanceKey& a, const DistanceKey& b);
  friend bool operator==(const DistanceKey& a, const DistanceKey& b) {
    return (a <=> b) == 0;
  }

 private:
  std::optional<Rational> exact_;
  double value_ = 2.0;
};

/// True when two floating 2cosh values are equal under kDistanceTolerance.
inline bool approx_same_distance(double a, double b) {
  double scale = a > b ? a : b;
  if (scale < 1.0) scale = 1.0;
  double diff = a > b ? a - b : b - a;
  return diff <= kDistanceTolerance * scale;
}

/// 2cosh d between (x1, y1) and (x2, y2).
inline double two_cosh(double x1, double y1, double x2, double y2) {
  double dx = x1 - x2;
  return (dx * dx + y1 * y1 + y2 * y2) / (y1 * y2);
}

Rational two_cosh_exact(const Rational& x1, const Rational& y1, const Rational& x2,
                        const Rational& y2);

/// 2cosh of the hyperbolic distance between two points.
DistanceKey cosh_distance(const UHPoint& z1, const UHPoint& z2);

double hyperbolic_distance(const UHPoint& z1, const UHPoint& z2);

/// Area 2*pi*(cosh R - 1) of a hyperbolic disc. Throws on R < 0.
double disc_area(double radius);

/// cosh(a + b) from cosh a and cosh b, in long double.
long double cosh_of_sum(long double cosh_a, long double cosh_b);

}  // namespace hypsurf
