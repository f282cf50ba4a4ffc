#include "hypsurf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace hypsurf {

namespace {

struct PairRecord {
  double value;
  std::uint32_t i, j;
};

std::size_t pair_offset(std::size_t i, std::size_t m) { return i * m - i * (i + 1) / 2; }

Rational exact_two_cosh_at(const UHPoint& p, const ModularElement& g, const UHPoint& q) {
  UHPoint w = mobius_apply(g, q);
  return two_cosh_exact(p.qx(), p.qy(), w.qx(), w.qy());
}

double float_two_cosh_at(double px, double py, const ModularElement& g, double qx, double qy) {
  double u = 0, v = 0;
  mobius_apply(g, qx, qy, u, v);
  return two_cosh(px, py, u, v);
}

// Minimum of 2cosh d(p, g q) over a candidate list; exact when p, q are.
DistanceKey min_over(const UHPoint& p, const UHPoint& q, std::span<const ModularElement> gs) {
  if (gs.empty()) throw std::logic_error("empty candidate list");
  std::vector<double> values(gs.size());
  double best = INFINITY;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    values[k] = float_two_cosh_at(p.x(), p.y(), gs[k], q.x(), q.y());
    best = std::min(best, values[k]);
  }
  if (!p.is_exact() || !q.is_exact()) return DistanceKey::approx(best);
  std::optional<Rational> exact_best;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    if (!approx_same_distance(values[k], best)) continue;
    Rational v = exact_two_cosh_at(p, gs[k], q);
    if (!exact_best || v < *exact_best) exact_best = std::move(v);
  }
  return DistanceKey::exact(*exact_best);
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Builds the histogram from unordered-pair records with floating values.
// Chains of tolerance-equal values are split into exact classes by exact_of
// when available.
template <class ExactOf>
DistanceStats histogram(std::size_t input_points, std::size_t m, std::vector<PairRecord>& records,
                        bool exact_inputs, ExactOf&& exact_of) {
  DistanceStats stats;
  stats.input_points = input_points;

  // Zero distances mark repeated surface points.
  UnionFind same(m);
  for (const auto& r : records) {
    if (!approx_same_distance(r.value, 2.0)) continue;
    if (exact_inputs) {
      if (exact_of(r) == 2) same.unite(r.i, r.j);
    } else {
      same.unite(r.i, r.j);
    }
  }
  std::vector<bool> removed(m, false);
  std::size_t kept = 0;
  for (std::size_t k = 0; k < m; ++k) {
    removed[k] = same.find(k) != k;
    if (!removed[k]) ++kept;
  }
  std::erase_if(records, [&](const PairRecord& r) { return removed[r.i] || removed[r.j]; });
  stats.points = kept;
  stats.collapsed = input_points - kept;

  std::sort(records.begin(), records.end(), [](const PairRecord& a, const PairRecord& b) {
    return a.value < b.value || (a.value == b.value && (a.i < b.i || (a.i == b.i && a.j < b.j)));
  });

  auto emit = [&](double value, std::uint64_t unordered) {
    std::uint64_t n = 2 * unordered;
    stats.multiplicities.push_back({value, n});
    stats.ordered_pairs += n;
    stats.quadruples += n * n;
  };

  std::size_t start = 0;
  while (start < records.size()) {
    std::size_t end = start + 1;
    while (end < records.size() && approx_same_distance(records[end - 1].value, records[end].value))
      ++end;
    if (end - start == 1 || !exact_inputs) {
      emit(records[start].value, end - start);
    } else {
      std::vector<std::pair<Rational, double>> keys;
      keys.reserve(end - start);
      for (std::size_t k = start; k < end; ++k) keys.emplace_back(exact_of(records[k]), records[k].value);
      std::sort(keys.begin(), keys.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::size_t run = 0;
      while (run < keys.size()) {
        std::size_t stop = run + 1;
        while (stop < keys.size() && keys[stop].first == keys[run].first) ++stop;
        emit(keys[run].first.get_d(), stop - run);
        run = stop;
      }
    }
    start = end;
  }
  stats.distinct = stats.multiplicities.size();
  return stats;
}

}  // namespace

SurfaceMinimum surface_minimum_oracle(const UHPoint& p, const UHPoint& q,
                                      const SubgroupSpec& spec) {
  DistanceKey start = cosh_distance(p, q);
  BallQuery query{spec, p, q, start.cosh(), std::nullopt};
  if (start.is_exact()) query.exact_cosh_threshold = Rational(start.exact_value() / 2);
  auto ball = enumerate_ball(query);
  // The start value only bounds the minimum over Gamma when the identity is
  // in Gamma, which always holds.
  if (ball.empty()) throw std::logic_error("ball around d(p, q) lost the identity");

  std::vector<double> values(ball.size());
  double best = INFINITY;
  for (std::size_t k = 0; k < ball.size(); ++k) {
    values[k] = float_two_cosh_at(p.x(), p.y(), ball[k], q.x(), q.y());
    best = std::min(best, values[k]);
  }
  SurfaceMinimum out{DistanceKey::approx(best), {}};
  if (!start.is_exact()) {
    for (std::size_t k = 0; k < ball.size(); ++k)
      if (approx_same_distance(values[k], best)) out.realisers.push_back(ball[k]);
    return out;
  }
  std::vector<std::pair<Rational, ModularElement>> near;
  for (std::size_t k = 0; k < ball.size(); ++k)
    if (approx_same_distance(values[k], best)) near.emplace_back(exact_two_cosh_at(p, ball[k], q), ball[k]);
  Rational exact_best = near.front().first;
  for (const auto& [v, g] : near) exact_best = std::min(exact_best, v);
  for (const auto& [v, g] : near)
    if (v == exact_best) out.realisers.push_back(g);
  out.value = DistanceKey::exact(exact_best);
  return out;
}

DistanceKey surface_distance_oracle(const UHPoint& p, const UHPoint& q, const SubgroupSpec& spec) {
  return surface_minimum_oracle(p, q, spec).value;
}

std::vector<ModularElement> difference_set(const GeodesicCover& cover) {
  std::vector<ModularElement> out;
  out.reserve(cover.elements.size() * cover.elements.size());
  for (const auto& g1 : cover.elements) {
    ModularElement inv = g1.inverse();
    for (const auto& g2 : cover.elements) out.push_back(inv * g2);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DistanceKey surface_distance_cover(const UHPoint& p, const UHPoint& q, const GeodesicCover& cover) {
  auto differences = difference_set(cover);
  return surface_distance_cover(p, q, cover, differences);
}

DistanceKey surface_distance_cover(const UHPoint& p, const UHPoint& q, const GeodesicCover& cover,
                                   std::span<const ModularElement> differences) {
  if (!cover.region.contains(p) || !cover.region.contains(q))
    throw std::invalid_argument("points must lie in the cover's region " + cover.region.name());
  return min_over(p, q, differences);
}

SurfaceDistanceEngine::SurfaceDistanceEngine(SubgroupSpec spec) : spec_(std::move(spec)) {
  const auto full_cusp = cover_Fu(SubgroupSpec::full()).elements;
  const auto full_central = cover_Fo(SubgroupSpec::full()).elements;
  for (const auto& alpha : spec_.cosets()) {
    cosets_.push_back(alpha);
    coset_inverses_.push_back(alpha.inverse());
  }
  for (std::size_t i = 0; i < cosets_.size(); ++i) {
    std::vector<ModularElement> cusp, central;
    for (const auto& g : full_cusp)
      if (in_double_coset(i, i, g)) cusp.push_back(g);
    for (const auto& g : full_central)
      if (in_double_coset(i, i, g)) central.push_back(g);
    cusp_cover_.push_back(std::move(cusp));
    central_cover_.push_back(std::move(central));
  }
}

bool SurfaceDistanceEngine::in_double_coset(std::size_t i, std::size_t j,
                                            const ModularElement& g) const {
  if (spec_.index() == 1) return true;
  return spec_.contains(cosets_[i] * g * coset_inverses_[j]);
}

SurfaceDistanceEngine::Prepared SurfaceDistanceEngine::prepare(const UHPoint& z) const {
  Reduction r = reduce_to_F(z);
  std::size_t piece = 0;
  bool found = false;
  for (std::size_t i = 0; i < cosets_.size(); ++i) {
    if (spec_.contains(cosets_[i] * r.gamma)) {
      piece = i;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("coset representatives of " + spec_.name() + " are inconsistent");
  Zone zone = classify_in_F(r.point);
  double x = r.point.x(), y = r.point.y();
  return {std::move(r.point), r.gamma, x, y, piece, zone};
}

double SurfaceDistanceEngine::min_two_cosh(const Prepared& p, const Prepared& q,
                                           std::vector<ModularElement>* ties) const {
  thread_local std::vector<std::pair<ModularElement, double>> found;
  found.clear();

  if (p.piece == q.piece && p.zone == q.zone && p.zone != Zone::Outside) {
    const auto& list = p.zone == Zone::Cusp ? cusp_cover_[p.piece] : central_cover_[p.piece];
    for (const auto& g : list) found.emplace_back(g, float_two_cosh_at(p.x, p.y, g, q.x, q.y));
  } else {
    double two_h = two_cosh(p.x, p.y, q.x, q.y);
    for (int round = 0; found.empty(); ++round) {
      if (round > 64) throw std::runtime_error("surface distance search did not meet the coset");
      detail::SweepInput in{p.x, p.y, q.x, q.y, two_h * (1.0 + 1e-9)};
      detail::sweep_ball(in, 0, detail::sweep_max_c(in), [&](const ModularElement& g, double v) {
        if (v <= in.two_h && in_double_coset(p.piece, q.piece, g)) found.emplace_back(g, v);
      });
      two_h = 2.0 * std::cosh(std::acosh(two_h / 2.0) + 1.0);
    }
  }

  double best = INFINITY;
  for (const auto& [g, v] : found) best = std::min(best, v);
  if (ties) {
    ties->clear();
    for (const auto& [g, v] : found)
      if (approx_same_distance(v, best)) ties->push_back(g);
  }
  return best;
}

DistanceKey SurfaceDistanceEngine::min_key(const Prepared& p, const Prepared& q) const {
  std::vector<ModularElement> ties;
  double best = min_two_cosh(p, q, &ties);
  if (!p.base.is_exact() || !q.base.is_exact()) return DistanceKey::approx(best);
  return min_over(p.base, q.base, ties);
}

Rational DistanceStats::cauchy_schwarz_bound() const {
  if (quadruples == 0) return Rational(0);
  mpz_class n(static_cast<unsigned long>(points));
  mpz_class pairs = n * n - n;
  Rational r(pairs * pairs, mpz_class(static_cast<unsigned long>(quadruples)));
  r.canonicalize();
  return r;
}

bool DistanceStats::cauchy_schwarz_holds() const {
  mpz_class n(static_cast<unsigned long>(points));
  mpz_class pairs = n * n - n;
  mpz_class lhs = mpz_class(static_cast<unsigned long>(distinct)) *
                  mpz_class(static_cast<unsigned long>(quadruples));
  return lhs >= pairs * pairs;
}

DistanceStats distance_stats(std::span<const UHPoint> points, const SubgroupSpec& spec) {
  SurfaceDistanceEngine engine(spec);
  const std::size_t n = points.size();
  std::vector<SurfaceDistanceEngine::Prepared> prepared;
  prepared.reserve(n);
  for (const auto& z : points) prepared.push_back(engine.prepare(z));

  const std::size_t m = n;
  std::vector<PairRecord> records(m < 2 ? 0 : m * (m - 1) / 2);
  bool exact_inputs = std::all_of(prepared.begin(), prepared.end(),
                                  [](const auto& p) { return p.base.is_exact(); });

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t off = pair_offset(i, m);
    for (std::size_t j = i + 1; j < m; ++j)
      records[off + (j - i - 1)] = {engine.min_two_cosh(prepared[i], prepared[j]),
                                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
  }

  return histogram(n, m, records, exact_inputs, [&](const PairRecord& r) {
    return engine.min_key(prepared[r.i], prepared[r.j]).exact_value();
  });
}

DistanceStats distance_stats_serial(std::span<const UHPoint> points, const SubgroupSpec& spec) {
  const std::size_t n = points.size();
  bool exact_inputs =
      std::all_of(points.begin(), points.end(), [](const UHPoint& p) { return p.is_exact(); });
  std::vector<PairRecord> records;
  std::map<std::pair<std::uint32_t, std::uint32_t>, DistanceKey> keys;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      DistanceKey k = surface_distance_oracle(points[i], points[j], spec);
      auto ii = static_cast<std::uint32_t>(i), jj = static_cast<std::uint32_t>(j);
      records.push_back({k.two_cosh(), ii, jj});
      keys.emplace(std::make_pair(ii, jj), std::move(k));
    }
  return histogram(n, n, records, exact_inputs, [&](const PairRecord& r) {
    return keys.at({r.i, r.j}).exact_value();
  });
}

DistanceStats plane_distance_stats(std::span<const UHPoint> points) {
  const std::size_t n = points.size();
  bool exact_inputs =
      std::all_of(points.begin(), points.end(), [](const UHPoint& p) { return p.is_exact(); });
  std::vector<PairRecord> records(n < 2 ? 0 : n * (n - 1) / 2);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t off = pair_offset(i, n);
    for (std::size_t j = i + 1; j < n; ++j)
      records[off + (j - i - 1)] = {
          two_cosh(points[i].x(), points[i].y(), points[j].x(), points[j].y()),
          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
  }
  return histogram(n, n, records, exact_inputs, [&](const PairRecord& r) {
    return two_cosh_exact(points[r.i].qx(), points[r.i].qy(), points[r.j].qx(), points[r.j].qy());
  });
}

std::uint64_t quadruple_count_H2(std::span<const UHPoint> points) {
  return plane_distance_stats(points).quadruples;
}

}  // namespace hypsurf
