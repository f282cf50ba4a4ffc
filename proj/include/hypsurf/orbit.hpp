#pragma once

// Hyperbolic circle problem for PSL(2,Z) and its congruence subgroups:
// all gamma with cosh d(p, gamma q) <= H.

#include "hypsurf/modular.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hypsurf {

struct BallQuery {
  SubgroupSpec spec;
  UHPoint center;
  UHPoint source;
  /// cosh of the radius, >= 1.
  double cosh_threshold = 1.0;
  /// Exact cosh threshold; when absent the double threshold is exact.
  std::optional<Rational> exact_cosh_threshold;
};

struct EnumerationLimits {
  std::size_t max_candidates = 20'000'000;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ball enumeration by a parallel (c, d) sweep. Output sorted by (c, d, a, b).
std::vector<ModularElement> enumerate_ball(const BallQuery& query,
                                           const EnumerationLimits& limits = {});

/// Serial reference of enumerate_ball with looser bounds and an exact test
/// on every candidate.
std::vector<ModularElement> enumerate_ball_serial(const BallQuery& query,
                                                  const EnumerationLimits& limits = {});

/// Independent oracle: breadth-first search over words in S, T, T^-1 of
/// length <= max_word_length, pruned to a generous neighbourhood of the
/// ball. Returns a subset of enumerate_ball, sorted the same way.
std::vector<ModularElement> enumerate_ball_bfs_oracle(const BallQuery& query,
                                                      int max_word_length);

/// True iff 2cosh d(p, g q) <= 2 * cosh_threshold, decided exactly when the
/// points (and threshold) are exact.
bool within_ball(const BallQuery& query, const ModularElement& g);

namespace detail {

struct SweepInput {
  double xp, yp;  // centre
  double xq, yq;  // source
  double two_h;   // 2 * cosh(radius)
};

inline double widen(double v) { return 1e-9 * std::max(1.0, std::abs(v)); }

/// Largest c worth scanning.
inline std::int64_t sweep_max_c(const SweepInput& in) {
  double h = std::max(1.0, in.two_h / 2.0);
  double growth = (h + std::sqrt(h * h - 1.0)) * (1.0 + 1e-9);
  double m_max = growth * in.yq / in.yp;
  double c = std::sqrt(m_max) / in.yq;
  return static_cast<std::int64_t>(std::floor(c + widen(c)));
}

/// Extended gcd solving a*d - b*c = 1 for coprime (c, d), c > 0.
inline bool unimodular_completion(std::int64_t c, std::int64_t d, std::int64_t& a,
                                  std::int64_t& b) {
  std::int64_t old_r = d, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  // old_s * d + old_t * c = old_r = +-1
  if (old_r != 1 && old_r != -1) return false;
  a = old_s * old_r;
  b = -old_t * old_r;
  return true;
}

/// Visits every gamma = (a, b, c, d) with c in [c_lo, c_hi] that can satisfy
/// 2cosh d(p, gamma q) <= two_h, passing the floating 2cosh value. Bounds
/// are widened by 1e-9 so no member is skipped; callers confirm.
template <class Visit>
void sweep_ball(const SweepInput& in, std::int64_t c_lo, std::int64_t c_hi, Visit&& visit) {
  const double h = std::max(1.0, in.two_h / 2.0);
  const double growth = h + std::sqrt(h * h - 1.0);
  const double m_max = growth * in.yq / in.yp * (1.0 + 1e-9);
  const double m_min = in.yq / (growth * in.yp) * (1.0 - 1e-9);

  auto scan_translates = [&](std::int64_t a0, std::int64_t b0, std::int64_t c, std::int64_t d) {
    double u0 = 0, v = 0;
    const double qc = static_cast<double>(c), qd = static_cast<double>(d);
    const double re = qc * in.xq + qd;
    const double den = re * re + qc * qc * in.yq * in.yq;
    const double qa = static_cast<double>(a0), qb = static_cast<double>(b0);
    u0 = ((qa * in.xq + qb) * re + qa * qc * in.yq * in.yq) / den;
    v = in.yq / den;
    // (xp - u)^2 <= two_h * yp * v - yp^2 - v^2
    double room = in.two_h * in.yp * v - in.yp * in.yp - v * v;
    room += widen(in.two_h * in.yp * v);
    if (room < 0.0) return;
    double half = std::sqrt(room);
    double lo = in.xp - u0 - half, hi = in.xp - u0 + half;
    std::int64_t k_lo = static_cast<std::int64_t>(std::ceil(lo - widen(lo)));
    std::int64_t k_hi = static_cast<std::int64_t>(std::floor(hi + widen(hi)));
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      double u = u0 + static_cast<double>(k);
      double value = two_cosh(in.xp, in.yp, u, v);
      visit(ModularElement(a0 + k * c, b0 + k * d, c, d), value);
    }
  };

  for (std::int64_t c = c_lo; c <= c_hi; ++c) {
    if (c == 0) {
      if (m_min <= 1.0 && 1.0 <= m_max) scan_translates(1, 0, 0, 1);
      continue;
    }
    const double qc = static_cast<double>(c);
    const double vert = qc * qc * in.yq * in.yq;
    double outer = m_max - vert;
    if (outer < -widen(m_max)) continue;
    outer = std::sqrt(std::max(0.0, outer));
    double inner_sq = m_min - vert;
    double inner = inner_sq > 0.0 ? std::sqrt(inner_sq) : -1.0;
    const double centre = -qc * in.xq;
    double lo = centre - outer, hi = centre + outer;
    std::int64_t d_lo = static_cast<std::int64_t>(std::ceil(lo - widen(lo)));
    std::int64_t d_hi = static_cast<std::int64_t>(std::floor(hi + widen(hi)));
    for (std::int64_t d = d_lo; d <= d_hi; ++d) {
      if (inner > 0.0) {
        double off = std::abs(qc * in.xq + static_cast<double>(d));
        if (off < inner - widen(inner)) continue;
      }
      if (std::gcd(c, d) != 1) continue;
      std::int64_t a0 = 0, b0 = 0;
      if (!unimodular_completion(c, d, a0, b0)) continue;
      scan_translates(a0, b0, c, d);
    }
  }
}

}  // namespace detail

}  // namespace hypsurf
