#include "hypsurf/modular.hpp"

#include <deque>
#include <stdexcept>

namespace hypsurf {

namespace {

std::int64_t checked_mul_add(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
  std::int64_t pq = 0, rs = 0, sum = 0;
  if (__builtin_mul_overflow(p, q, &pq) || __builtin_mul_overflow(r, s, &rs) ||
      __builtin_add_overflow(pq, rs, &sum))
    throw std::overflow_error("PSL(2,Z) entry overflow in composition");
  return sum;
}

std::int64_t mod(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

}  // namespace

ModularElement::ModularElement(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
  __int128 det = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
  if (det != 1) throw std::invalid_argument("PSL(2,Z) element needs ad - bc = 1");
  if (c_ < 0 || (c_ == 0 && d_ < 0)) {
    if (a_ == INT64_MIN || b_ == INT64_MIN || c_ == INT64_MIN || d_ == INT64_MIN)
      throw std::overflow_error("PSL(2,Z) entry overflow in normalization");
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

RealMatrix2 ModularElement::to_real() const {
  RealMatrix2 m;
  m.a = static_cast<double>(a_);
  m.b = static_cast<double>(b_);
  m.c = static_cast<double>(c_);
  m.d = static_cast<double>(d_);
  return m;
}

std::string ModularElement::to_string() const {
  return "[" + std::to_string(a_) + "," + std::to_string(b_) + "," + std::to_string(c_) + "," +
         std::to_string(d_) + "]";
}

std::size_t ModularElementHash::operator()(const ModularElement& g) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (std::int64_t v : {g.a(), g.b(), g.c(), g.d()}) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

ModularElement compose(const ModularElement& g, const ModularElement& h) {
  return {checked_mul_add(g.a(), h.a(), g.b(), h.c()), checked_mul_add(g.a(), h.b(), g.b(), h.d()),
          checked_mul_add(g.c(), h.a(), g.d(), h.c()), checked_mul_add(g.c(), h.b(), g.d(), h.d())};
}

UHPoint mobius_apply(const ModularElement& g, const UHPoint& z) {
  if (!z.is_exact()) {
    double u = 0, v = 0;
    mobius_apply(g, z.x(), z.y(), u, v);
    return UHPoint::approx(u, v);
  }
  const Rational& x = z.qx();
  const Rational& y = z.qy();
  Rational a(static_cast<long>(g.a())), b(static_cast<long>(g.b()));
  Rational c(static_cast<long>(g.c())), d(static_cast<long>(g.d()));
  Rational re = c * x + d;
  Rational y2 = y * y;
  Rational den = re * re + c * c * y2;
  Rational u = ((a * x + b) * re + a * c * y2) / den;
  Rational v = y / den;
  return UHPoint(std::move(u), std::move(v));
}

SubgroupSpec::SubgroupSpec(SubgroupKind kind, std::int64_t level, int max_word_length)
    : kind_(kind), level_(level) {
  if (level_ < 1) throw std::invalid_argument("subgroup level must be positive");
  if (kind_ == SubgroupKind::Full) level_ = 1;
  cosets_ = coset_decomposition(*this, max_word_length);
}

SubgroupSpec SubgroupSpec::parse(std::string_view text) {
  if (text == "full") return full();
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("unknown group: " + std::string(text));
  auto head = text.substr(0, colon);
  auto tail = std::string(text.substr(colon + 1));
  std::int64_t n = 0;
  try {
    size_t used = 0;
    n = std::stoll(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad group level: " + std::string(text));
  }
  if (n < 1) throw std::invalid_argument("group level must be positive: " + std::string(text));
  if (head == "gamma") return principal(n);
  if (head == "gamma0") return hecke(n);
  if (head == "gamma1") return gamma1(n);
  throw std::invalid_argument("unknown group: " + std::string(text));
}

std::string SubgroupSpec::name() const {
  switch (kind_) {
    case SubgroupKind::Full: return "full";
    case SubgroupKind::Principal: return "gamma:" + std::to_string(level_);
    case SubgroupKind::Hecke: return "gamma0:" + std::to_string(level_);
    case SubgroupKind::Gamma1: return "gamma1:" + std::to_string(level_);
  }
  return "full";
}

bool SubgroupSpec::contains(const ModularElement& g) const {
  if (kind_ == SubgroupKind::Full || level_ == 1) return true;
  const std::int64_t n = level_;
  const std::int64_t a = mod(g.a(), n), b = mod(g.b(), n), c = mod(g.c(), n), d = mod(g.d(), n);
  const std::int64_t minus_one = n - 1;
  switch (kind_) {
    case SubgroupKind::Principal:
      return b == 0 && c == 0 && ((a == 1 % n && d == 1 % n) || (a == minus_one && d == minus_one));
    case SubgroupKind::Hecke:
      return c == 0;
    case SubgroupKind::Gamma1:
      return c == 0 && ((a == 1 % n && d == 1 % n) || (a == minus_one && d == minus_one));
    case SubgroupKind::Full:
      return true;
  }
  return true;
}

std::size_t SubgroupSpec::coset_of(const ModularElement& g) const {
  for (std::size_t i = 0; i < cosets_.size(); ++i)
    if (contains(g * cosets_[i].inverse())) return i;
  throw std::logic_error("coset decomposition of " + name() + " is incomplete");
}

bool is_member(const SubgroupSpec& spec, const ModularElement& g) { return spec.contains(g); }

std::vector<ModularElement> coset_decomposition(const SubgroupSpec& spec, int max_word_length) {
  const ModularElement generators[] = {ModularElement::S(), ModularElement::T(),
                                       ModularElement::T_inv()};
  std::vector<ModularElement> reps{ModularElement::identity()};
  std::vector<int> length{0};
  std::deque<std::size_t> queue{0};

  auto known = [&](const ModularElement& g) {
    for (const auto& r : reps)
      if (spec.contains(g * r.inverse())) return true;
    return false;
  };

  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& gen : generators) {
      ModularElement g = reps[i] * gen;
      if (known(g)) continue;
      if (length[i] + 1 > max_word_length)
        throw std::runtime_error("coset enumeration for " + spec.name() +
                                 " did not close within the word-length bound");
      reps.push_back(g);
      length.push_back(length[i] + 1);
      queue.push_back(reps.size() - 1);
    }
  }
  return reps;
}

std::vector<ModularElement> coset_decomposition(const SubgroupSpec& spec) {
  return coset_decomposition(spec, SubgroupSpec::kDefaultMaxWordLength);
}

std::size_t index(const SubgroupSpec& spec) { return spec.index(); }

}  // namespace hypsurf
