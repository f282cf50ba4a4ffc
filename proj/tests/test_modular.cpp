#include "doctest.h"

#include "hypsurf/modular.hpp"
#include "hypsurf/random.hpp"

#include <limits>
#include <set>
#include <stdexcept>

using namespace hypsurf;

namespace {

ModularElement random_word(Rng& rng, int length) {
  const ModularElement gens[] = {ModularElement::S(), ModularElement::T(), ModularElement::T_inv()};
  ModularElement g;
  for (int k = 0; k < length; ++k) g = g * gens[rng.below(3)];
  return g;
}

bool canonical(const ModularElement& g) {
  return g.c() > 0 || (g.c() == 0 && g.d() > 0);
}

// Closed-form index [PSL(2,Z) : Gamma(N)] for N >= 3 is N^3/2 prod(1 - 1/p^2).
std::size_t principal_index(std::int64_t n) {
  if (n == 1) return 1;
  if (n == 2) return 6;
  double v = static_cast<double>(n * n * n) / 2.0;
  std::int64_t m = n;
  for (std::int64_t p = 2; p <= m; ++p)
    if (m % p == 0) {
      v *= 1.0 - 1.0 / static_cast<double>(p * p);
      while (m % p == 0) m /= p;
    }
  return static_cast<std::size_t>(v + 0.5);
}

}  // namespace

TEST_CASE("compose examples") {
  auto I = ModularElement::identity();
  auto S = ModularElement::S();
  auto T = ModularElement::T();
  CHECK(I * S == S);
  CHECK(S * S == I);
  CHECK(T * T == ModularElement(1, 2, 0, 1));
  CHECK(ModularElement(-1, 0, 0, -1) == I);
  CHECK_THROWS_AS(ModularElement(1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("compose detects overflow") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2;
  auto g = ModularElement::translation(big);
  CHECK_THROWS_AS(g * g * g, std::overflow_error);
}

TEST_CASE("is_member examples") {
  auto g2 = SubgroupSpec::principal(2);
  CHECK(is_member(g2, ModularElement::identity()));
  CHECK_FALSE(is_member(g2, ModularElement::T()));
  CHECK(is_member(g2, ModularElement::translation(2)));
  auto h = SubgroupSpec::hecke(3);
  CHECK(is_member(h, ModularElement(1, 0, 3, 1)));
  CHECK_FALSE(is_member(h, ModularElement::S()));
  auto g1 = SubgroupSpec::gamma1(5);
  CHECK(is_member(g1, ModularElement(1, 0, 5, 1)));
  CHECK(is_member(g1, ModularElement(-1, 0, 5, -1)));  // -I times a member
  CHECK_FALSE(is_member(g1, ModularElement(2, 1, 5, 3)));
}

TEST_CASE("coset_decomposition and index examples") {
  CHECK(coset_decomposition(SubgroupSpec::full()).size() == 1);
  CHECK(coset_decomposition(SubgroupSpec::full()).front().is_identity());
  CHECK(index(SubgroupSpec::principal(2)) == 6);
  CHECK(index(SubgroupSpec::hecke(2)) == 3);
  CHECK(index(SubgroupSpec::hecke(4)) == 6);
  CHECK(index(SubgroupSpec::gamma1(5)) == 12);
  CHECK(index(SubgroupSpec::full()) == 1);
  for (std::int64_t n = 1; n <= 6; ++n)
    CHECK(index(SubgroupSpec::principal(n)) == principal_index(n));
  // Hecke index N prod(1 + 1/p).
  CHECK(index(SubgroupSpec::hecke(6)) == 12);
  CHECK(index(SubgroupSpec::hecke(5)) == 6);
}

TEST_CASE("coset_decomposition fails without closure") {
  CHECK_THROWS_AS(coset_decomposition(SubgroupSpec::principal(6), 2), std::runtime_error);
  CHECK_NOTHROW(coset_decomposition(SubgroupSpec::principal(2), 3));
}

TEST_CASE("parse group strings") {
  CHECK(SubgroupSpec::parse("full") == SubgroupSpec::full());
  CHECK(SubgroupSpec::parse("gamma:2") == SubgroupSpec::principal(2));
  CHECK(SubgroupSpec::parse("gamma0:4") == SubgroupSpec::hecke(4));
  CHECK(SubgroupSpec::parse("gamma1:5") == SubgroupSpec::gamma1(5));
  CHECK(SubgroupSpec::parse("gamma:2").name() == "gamma:2");
  CHECK_THROWS_AS(SubgroupSpec::parse("gamma:0"), std::invalid_argument);
  CHECK_THROWS_AS(SubgroupSpec::parse("delta:3"), std::invalid_argument);
  CHECK_THROWS_AS(SubgroupSpec::parse("gamma:x"), std::invalid_argument);
}

TEST_CASE("group axioms on random words") {
  Rng rng(3);
  for (int n = 0; n < 10000; ++n) {
    auto a = random_word(rng, 1 + static_cast<int>(rng.below(10)));
    auto b = random_word(rng, 1 + static_cast<int>(rng.below(10)));
    auto c = random_word(rng, 1 + static_cast<int>(rng.below(10)));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * a.inverse() == ModularElement::identity());
    REQUIRE(ModularElement::identity() * a == a);
    REQUIRE(canonical(a * b));
    REQUIRE(canonical(a.inverse()));
  }
}

TEST_CASE("membership is a congruence") {
  Rng rng(4);
  for (const char* name : {"gamma:2", "gamma:3", "gamma0:4", "gamma1:5"}) {
    auto spec = SubgroupSpec::parse(name);
    std::vector<ModularElement> members;
    while (members.size() < 200) {
      auto g = random_word(rng, 1 + static_cast<int>(rng.below(12)));
      if (spec.contains(g)) members.push_back(g);
    }
    for (std::size_t k = 0; k + 1 < members.size(); ++k)
      CHECK(spec.contains(members[k] * members[k + 1].inverse()));
  }
}

TEST_CASE("coset soundness") {
  Rng rng(6);
  for (const char* name : {"gamma:2", "gamma:3", "gamma0:2", "gamma0:4", "gamma1:5", "gamma:6"}) {
    auto spec = SubgroupSpec::parse(name);
    auto reps = spec.cosets();
    CHECK(reps.front().is_identity());
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < reps.size(); ++j)
        if (i != j) CHECK_FALSE(spec.contains(reps[i] * reps[j].inverse()));
    for (int n = 0; n < 1000; ++n) {
      auto g = random_word(rng, 1 + static_cast<int>(rng.below(12)));
      int hits = 0;
      for (const auto& r : reps)
        if (spec.contains(g * r.inverse())) ++hits;
      REQUIRE(hits == 1);
      REQUIRE(spec.contains(g * reps[spec.coset_of(g)].inverse()));
    }
  }
}

TEST_CASE("cosets are deterministic") {
  auto a = coset_decomposition(SubgroupSpec::principal(3));
  auto b = coset_decomposition(SubgroupSpec::principal(3));
  CHECK(a == b);
  std::set<ModularElement> unique(a.begin(), a.end());
  CHECK(unique.size() == a.size());
}
