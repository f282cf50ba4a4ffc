#pragma once

// Surface distances on Gamma \ H^2 and distinct-distance statistics.

#include "hypsurf/covers.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hypsurf {

struct SurfaceMinimum {
  DistanceKey value;
  /// Every gamma in Gamma with 2cosh d(p, gamma q) equal to value.
  std::vector<ModularElement> realisers;
};

/// Minimum of d(p, gamma q) over the ball of radius d(p, q); exact for exact
/// inputs.
SurfaceMinimum surface_minimum_oracle(const UHPoint& p, const UHPoint& q,
                                      const SubgroupSpec& spec);

DistanceKey surface_distance_oracle(const UHPoint& p, const UHPoint& q,
                                    const SubgroupSpec& spec);

/// {g1^-1 g2 : g1, g2 in the cover}, sorted.
std::vector<ModularElement> difference_set(const GeodesicCover& cover);

/// Pairwise form min over g1, g2 of d(g1 p, g2 q). Throws
/// std::invalid_argument when p or q lies outside the cover's region.
DistanceKey surface_distance_cover(const UHPoint& p, const UHPoint& q, const GeodesicCover& cover);

/// Same, with a precomputed difference set.
DistanceKey surface_distance_cover(const UHPoint& p, const UHPoint& q, const GeodesicCover& cover,
                                   std::span<const ModularElement> differences);

/// Fast surface distances for many pairs of one subgroup. Points are moved
/// to F once; same-piece pairs in F_u or F_o use the conjugated covers,
/// others an orbit sweep that widens until it meets the right coset.
class SurfaceDistanceEngine {
 public:
  explicit SurfaceDistanceEngine(SubgroupSpec spec);

  struct Prepared {
    UHPoint base;           // representative in F
    ModularElement to_base; // to_base * z == base
    double x, y;
    std::size_t piece;
    Zone zone;
  };

  const SubgroupSpec& spec() const { return spec_; }
  Prepared prepare(const UHPoint& z) const;

  /// Floating minimum of 2cosh d over Gamma. When ties is non-null it
  /// receives every element (acting on the base points) within tolerance of
  /// the minimum.
  double min_two_cosh(const Prepared& p, const Prepared& q,
                      std::vector<ModularElement>* ties = nullptr) const;

  /// Minimum resolved exactly among the floating near-ties.
  DistanceKey min_key(const Prepared& p, const Prepared& q) const;

 private:
  bool in_double_coset(std::size_t i, std::size_t j, const ModularElement& g) const;

  SubgroupSpec spec_;
  std::vector<ModularElement> cosets_;
  std::vector<ModularElement> coset_inverses_;
  std::vector<std::vector<ModularElement>> cusp_cover_;     // per piece
  std::vector<std::vector<ModularElement>> central_cover_;  // per piece
};

struct Multiplicity {
  double two_cosh;
  std::uint64_t ordered_pairs;
};

struct DistanceStats {
  std::size_t input_points = 0;
  std::size_t points = 0;     // after collapsing repeated surface points
  std::size_t collapsed = 0;
  std::size_t distinct = 0;
  std::uint64_t ordered_pairs = 0;  // sum of n_i
  std::uint64_t quadruples = 0;     // sum of n_i^2
  std::vector<Multiplicity> multiplicities;  // sorted by distance

  /// (N^2 - N)^2 / |Q| as an exact fraction.
  Rational cauchy_schwarz_bound() const;
  double bound() const { return cauchy_schwarz_bound().get_d(); }
  /// distinct * |Q| >= (N^2 - N)^2, in integers.
  bool cauchy_schwarz_holds() const;
};

/// Parallel statistics through SurfaceDistanceEngine.
DistanceStats distance_stats(std::span<const UHPoint> points, const SubgroupSpec& spec);

/// Serial reference: exact oracle distance per pair, ordered map histogram.
DistanceStats distance_stats_serial(std::span<const UHPoint> points, const SubgroupSpec& spec);

/// |Q_{H^2}|: ordered pairs of ordered pairs with equal nonzero plane
/// distance.
std::uint64_t quadruple_count_H2(std::span<const UHPoint> points);

/// Plane-distance statistics, same layout as DistanceStats.
DistanceStats plane_distance_stats(std::span<const UHPoint> points);

}  // namespace hypsurf
