#pragma once

#include "hypsurf/modular.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hypsurf {

/// Height separating the cuspidal part F_u from the central part F_o.
inline const Rational kDefaultCuspHeight{2};

enum class RegionKind {
  Fundamental,  // F = {|x| <= 1/2, |z| >= 1}
  Cusp,         // F_u = {|x| <= 1/2, y >= U}
  Central,      // F_o = F \ F_u
  Strip,        // sigma * P(T), P(T) = {0 < x < 1, y >= T}
  Translate,    // alpha(F)
  Disc,         // closed hyperbolic disc
};

class Region {
 public:
  static Region fundamental();
  static Region cusp(Rational height = kDefaultCuspHeight);
  static Region central(Rational height = kDefaultCuspHeight);
  static Region strip(double T, RealMatrix2 cusp_scaling = {});
  static Region translate(ModularElement alpha);
  static Region disc(UHPoint center, double radius);

  RegionKind kind() const { return kind_; }
  const Rational& cusp_height() const { return height_; }
  double strip_height() const { return strip_T_; }
  const RealMatrix2& cusp_scaling() const { return sigma_; }
  const ModularElement& alpha() const { return alpha_; }
  const UHPoint& center() const { return center_; }
  double radius() const { return radius_; }
  bool bounded() const;

  /// Closed-region membership; exact for exact points except for Strip and
  /// Disc, which are tested in floating point.
  bool contains(const UHPoint& z) const;
  /// Membership in the closure; differs from contains only for F_o, whose
  /// top edge y = U belongs to F_u.
  bool closure_contains(const UHPoint& z) const;
  std::string name() const;

 private:
  explicit Region(RegionKind kind) : kind_(kind) {}
  RegionKind kind_;
  Rational height_ = kDefaultCuspHeight;
  double strip_T_ = 0.0;
  RealMatrix2 sigma_{};
  ModularElement alpha_{};
  UHPoint center_ = UHPoint(Rational(0), Rational(1));
  double radius_ = 0.0;
};

/// Closed standard domain test |x| <= 1/2, x^2 + y^2 >= 1.
bool in_closed_F(const UHPoint& z);

/// Half-open convention making reduction a function: -1/2 <= x < 1/2,
/// |z| >= 1, and on |z| = 1 only x <= 0.
bool in_reduced_F(const UHPoint& z);

enum class Zone { Cusp, Central, Outside };

Zone classify_in_F(const UHPoint& z, const Rational& height = kDefaultCuspHeight);

struct Reduction {
  UHPoint point;
  ModularElement gamma;  // gamma * z == point
};

/// Moves z into F by translations and inversions. Idempotent on F.
Reduction reduce_to_F(const UHPoint& z);

struct SubgroupReduction {
  UHPoint point;
  std::size_t piece;
  ModularElement gamma;  // gamma in Gamma and gamma * z == point in alpha_piece(F)
};

SubgroupReduction reduce_to_subgroup_domain(const UHPoint& z, const SubgroupSpec& spec);

/// F_Gamma as the union of the translates alpha_i(F).
class SubgroupDomain {
 public:
  explicit SubgroupDomain(SubgroupSpec spec);

  const SubgroupSpec& spec() const { return spec_; }
  const std::vector<Region>& pieces() const { return pieces_; }
  /// Index of the piece whose convention-reduced interior contains z, if any.
  std::optional<std::size_t> piece_containing(const UHPoint& z) const;
  double area() const;

 private:
  SubgroupSpec spec_;
  std::vector<Region> pieces_;
};

/// Area of the geodesic triangle alpha(F) from its vertex angles
/// (pi minus the angle sum, with the cusp vertex contributing zero).
double translate_area(const ModularElement& alpha);

}  // namespace hypsurf
