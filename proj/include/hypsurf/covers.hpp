#pragma once

// Geodesic covers: finite sets of group elements that realise every surface
// distance between points of a region.

#include "hypsurf/domain.hpp"
#include "hypsurf/orbit.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hypsurf {

enum class CoverProvenance { Translation, Ball, GenericCentral };

std::string to_string(CoverProvenance p);

struct GeodesicCover {
  Region region;
  SubgroupSpec spec;
  std::vector<ModularElement> elements;  // sorted, contains the identity
  CoverProvenance provenance;

  std::size_t size() const { return elements.size(); }
  bool contains(const ModularElement& g) const;
};

/// Closed-form constants for the split F = F_u + F_o at height 2.
struct SplitConstants {
  double cosh_diam_Fo;        // 23 sqrt(3) / 24
  double cosh_r0;             // 5 sqrt(3) / 6, r0 = max d(2i, z) over F_o
  double area_F;              // pi / 3
  double area_Fu;             // 1 / 2
  double area_Fo;             // pi / 3 - 1 / 2
  double cover_radius_cosh;   // cosh(diam + 2 r0)
  double disc_radius_cosh;    // cosh(diam + 3 r0)
  double area_disc;           // 2 pi (cosh(diam + 3 r0) - 1)
  double area_disc_closed;    // (pi / 36)(848 + 11 sqrt(4381))
  double area_ratio;          // area_disc / area_Fo
  std::int64_t bound = 252;

  static const SplitConstants& get();
};

/// Threshold rounded up by 1e-9 for use as an enumeration radius.
double enumeration_threshold(double cosh_value);

/// The translations {T^-1, I, T} that lie in Gamma.
GeodesicCover cover_Fu(const SubgroupSpec& spec);

/// {gamma in Gamma : d(2i, gamma 2i) <= diam(F_o) + 2 r0}.
GeodesicCover cover_Fo(const SubgroupSpec& spec);

/// {gamma in Gamma : d(O, gamma O) <= 3 diam(region)} for a bounded region
/// containing O. Throws std::invalid_argument when O has a nontrivial
/// stabiliser in Gamma or the region is unbounded.
GeodesicCover cover_central_generic(const SubgroupSpec& spec, const Region& region,
                                    const UHPoint& base);

struct StripCover {
  std::vector<ModularElement> elements;
  bool certified;  // T >= 100 + 10 / c_min
};

/// The three translations for P(T). Throws std::invalid_argument if T <= 0.
StripCover cover_strip(double T, double c_min);

/// cosh of the diameter of a bounded region: closed form for F_o, 2r for a
/// disc.
double region_cosh_diameter(const Region& region);

/// Numeric maximiser of pairwise distance over a dense boundary sampling of
/// F_o; cross-checks the closed form.
double numeric_cosh_diameter_Fo(int samples_per_edge = 400);

struct CoverFailure {
  UHPoint p, q;
  DistanceKey via_cover, true_distance;
};

struct VerificationReport {
  bool pass = true;
  double worst_gap = 0.0;  // max over pairs of (cover 2cosh - surface 2cosh)
  std::size_t pairs = 0;
  std::uint64_t seed = 0;
  std::optional<CoverFailure> first_failure;
  /// Elements realising the minimum among sampled pairs that are missing
  /// from the cover; empty for a valid cover.
  std::vector<ModularElement> missing_realisers;
};

/// Samples point pairs from the cover's region (hyperbolic measure, snapped
/// to a rational grid, plus the region's corners and boundary midpoints) and
/// compares the pairwise-form cover distance with the surface distance.
VerificationReport verify_cover(const GeodesicCover& cover, std::size_t samples,
                                std::uint64_t seed);

/// Rational-grid samples from a region under the hyperbolic measure;
/// unbounded cusp regions are truncated at y_cap.
std::vector<UHPoint> sample_region(const Region& region, std::size_t count, std::uint64_t seed,
                                   double y_cap = 10.0);

/// Corners and boundary midpoints of the region, rationally rounded inward.
std::vector<UHPoint> region_landmarks(const Region& region, double y_cap = 10.0);

}  // namespace hypsurf
