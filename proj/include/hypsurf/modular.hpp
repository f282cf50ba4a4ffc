#pragma once

#include "hypsurf/hyperbolic.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypsurf {

/// Element of PSL(2,Z): an integer matrix with ad - bc = 1, stored with
/// c > 0, or c = 0 and d > 0, so that M and -M share one representative.
class ModularElement {
 public:
  ModularElement() = default;
  /// Throws std::invalid_argument if ad - bc != 1.
  ModularElement(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  static ModularElement identity() { return {}; }
  static ModularElement S() { return {0, -1, 1, 0}; }
  static ModularElement T() { return {1, 1, 0, 1}; }
  static ModularElement T_inv() { return {1, -1, 0, 1}; }
  static ModularElement translation(std::int64_t n) { return {1, n, 0, 1}; }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }

  ModularElement inverse() const { return {d_, -b_, -c_, a_}; }
  bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }

  RealMatrix2 to_real() const;
  std::string to_string() const;

  /// Orders by (c, d, a, b).
  friend std::strong_ordering operator<=>(const ModularElement& g, const ModularElement& h) {
    if (auto o = g.c_ <=> h.c_; o != 0) return o;
    if (auto o = g.d_ <=> h.d_; o != 0) return o;
    if (auto o = g.a_ <=> h.a_; o != 0) return o;
    return g.b_ <=> h.b_;
  }
  friend bool operator==(const ModularElement&, const ModularElement&) = default;

 private:
  std::int64_t a_ = 1, b_ = 0, c_ = 0, d_ = 1;
};

struct ModularElementHash {
  std::size_t operator()(const ModularElement& g) const noexcept;
};

/// Product g*h. Throws std::overflow_error if an entry leaves int64 range.
ModularElement compose(const ModularElement& g, const ModularElement& h);
inline ModularElement operator*(const ModularElement& g, const ModularElement& h) {
  return compose(g, h);
}

/// Moebius action; exactness of z is preserved.
UHPoint mobius_apply(const ModularElement& g, const UHPoint& z);

/// Moebius action on double coordinates.
inline void mobius_apply(const ModularElement& g, double x, double y, double& u, double& v) {
  double ga = static_cast<double>(g.a()), gb = static_cast<double>(g.b());
  double gc = static_cast<double>(g.c()), gd = static_cast<double>(g.d());
  double re = gc * x + gd;
  double im = gc * y;
  double den = re * re + im * im;
  u = ((ga * x + gb) * re + ga * gc * y * y) / den;
  v = y / den;
}

enum class SubgroupKind { Full, Principal, Hecke, Gamma1 };

/// A congruence subgroup of PSL(2,Z) with its right coset decomposition
/// PSL(2,Z) = union of Gamma * alpha_i, built at construction.
class SubgroupSpec {
 public:
  static constexpr int kDefaultMaxWordLength = 4096;

  SubgroupSpec() : SubgroupSpec(SubgroupKind::Full, 1) {}
  SubgroupSpec(SubgroupKind kind, std::int64_t level,
               int max_word_length = kDefaultMaxWordLength);

  static SubgroupSpec full() { return {}; }
  static SubgroupSpec principal(std::int64_t n) { return {SubgroupKind::Principal, n}; }
  static SubgroupSpec hecke(std::int64_t n) { return {SubgroupKind::Hecke, n}; }
  static SubgroupSpec gamma1(std::int64_t n) { return {SubgroupKind::Gamma1, n}; }

  /// "full", "gamma:N", "gamma0:N", "gamma1:N".
  static SubgroupSpec parse(std::string_view text);

  SubgroupKind kind() const { return kind_; }
  std::int64_t level() const { return level_; }
  std::string name() const;

  bool contains(const ModularElement& g) const;

  std::size_t index() const { return cosets_.size(); }
  std::span<const ModularElement> cosets() const { return cosets_; }
  /// The unique i with g * alpha_i^{-1} in Gamma.
  std::size_t coset_of(const ModularElement& g) const;

  friend bool operator==(const SubgroupSpec& s, const SubgroupSpec& t) {
    return s.kind_ == t.kind_ && s.level_ == t.level_;
  }

 private:
  SubgroupKind kind_;
  std::int64_t level_;
  std::vector<ModularElement> cosets_;
};

bool is_member(const SubgroupSpec& spec, const ModularElement& g);

/// Breadth-first enumeration over the generators S, T, T^-1 (in that order)
/// from the identity, keeping the first word that reaches each right coset.
/// Throws std::runtime_error if no closure within max_word_length.
std::vector<ModularElement> coset_decomposition(const SubgroupSpec& spec,
                                                int max_word_length);
std::vector<ModularElement> coset_decomposition(const SubgroupSpec& spec);

std::size_t index(const SubgroupSpec& spec);

}  // namespace hypsurf
