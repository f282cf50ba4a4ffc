#pragma once

#include "hypsurf/metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace hypsurf {

struct EquilateralCandidate {
  std::vector<UHPoint> points;  // representatives in F_Gamma
  DistanceKey common;           // target 2cosh(d)
  double residual;              // max |2cosh d_Y(p_i, p_j) - 2cosh(d)|, by the exact oracle
};

struct EquilateralOptions {
  std::size_t budget = 400;  // Newton solves across all restarts
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
};

/// Incremental search for k points with all pairwise surface distances d.
/// Each new point solves the circle-intersection system by Newton /
/// Gauss-Newton on 2cosh residuals. Returns nullopt when the budget runs out.
std::optional<EquilateralCandidate> equilateral_search(const SubgroupSpec& spec, std::size_t k,
                                                       double d,
                                                       const EquilateralOptions& options = {});

/// Max deviation of the oracle's pairwise surface 2cosh values from
/// target_two_cosh.
double equilateral_residual(std::span<const UHPoint> points, const SubgroupSpec& spec,
                            double target_two_cosh);

}  // namespace hypsurf
