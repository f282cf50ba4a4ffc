#include "hypsurf/orbit.hpp"

#include "hypsurf/domain.hpp"

#include <atomic>
#include <deque>
#include <unordered_set>

#include <omp.h>

namespace hypsurf {

namespace {

Rational cosh_threshold_exact(const BallQuery& q) {
  return q.exact_cosh_threshold ? *q.exact_cosh_threshold : exact_from_double(q.cosh_threshold);
}

void validate(const BallQuery& q) {
  if (!(q.cosh_threshold >= 1.0) && !q.exact_cosh_threshold)
    throw std::invalid_argument("ball threshold must satisfy cosh >= 1");
  if (q.exact_cosh_threshold && *q.exact_cosh_threshold < 1)
    throw std::invalid_argument("ball threshold must satisfy cosh >= 1");
}

double two_h_of(const BallQuery& q) {
  return 2.0 * (q.exact_cosh_threshold ? q.exact_cosh_threshold->get_d() : q.cosh_threshold);
}

bool exact_inputs(const BallQuery& q) { return q.center.is_exact() && q.source.is_exact(); }

bool exact_within(const BallQuery& q, const Rational& two_h_exact, const ModularElement& g) {
  UHPoint w = mobius_apply(g, q.source);
  return two_cosh_exact(q.center.qx(), q.center.qy(), w.qx(), w.qy()) <= two_h_exact;
}

// Decides membership from the floating value, falling back to the exact
// test only inside the rounding band.
class BallJudge {
 public:
  explicit BallJudge(const BallQuery& q)
      : query_(q), exact_(exact_inputs(q)), two_h_(two_h_of(q)) {
    if (exact_) two_h_exact_ = 2 * cosh_threshold_exact(q);
  }

  bool accept(const ModularElement& g, double value) const {
    if (!query_.spec.contains(g)) return false;
    if (!exact_) return value <= two_h_;
    double band = 1e-9 * std::max(1.0, two_h_);
    if (value < two_h_ - band) return true;
    if (value > two_h_ + band) return false;
    return exact_within(query_, two_h_exact_, g);
  }

 private:
  const BallQuery& query_;
  bool exact_;
  double two_h_;
  Rational two_h_exact_;
};

}  // namespace

bool within_ball(const BallQuery& query, const ModularElement& g) {
  if (exact_inputs(query)) return exact_within(query, 2 * cosh_threshold_exact(query), g);
  double u = 0, v = 0;
  mobius_apply(g, query.source.x(), query.source.y(), u, v);
  return two_cosh(query.center.x(), query.center.y(), u, v) <= two_h_of(query);
}

std::vector<ModularElement> enumerate_ball(const BallQuery& query,
                                           const EnumerationLimits& limits) {
  validate(query);
  const detail::SweepInput in{query.center.x(), query.center.y(), query.source.x(),
                              query.source.y(), two_h_of(query)};
  const std::int64_t c_max = detail::sweep_max_c(in);
  const BallJudge judge(query);
  std::atomic<std::size_t> visited{0};
  std::atomic<bool> overflow{false};
  std::vector<ModularElement> result;

#pragma omp parallel
  {
    std::vector<ModularElement> local;
    std::size_t local_count = 0;
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t c = 0; c <= c_max; ++c) {
      if (overflow.load(std::memory_order_relaxed)) continue;
      detail::sweep_ball(in, c, c, [&](const ModularElement& g, double value) {
        if (++local_count % 4096 == 0 &&
            visited.fetch_add(4096, std::memory_order_relaxed) + 4096 > limits.max_candidates)
          overflow.store(true, std::memory_order_relaxed);
        if (judge.accept(g, value)) local.push_back(g);
      });
    }
#pragma omp critical(hypsurf_ball_merge)
    result.insert(result.end(), local.begin(), local.end());
  }

  if (overflow) throw CapExceeded("ball enumeration exceeded the candidate cap");
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::vector<ModularElement> enumerate_ball_serial(const BallQuery& query,
                                                  const EnumerationLimits& limits) {
  validate(query);
  const bool exact = exact_inputs(query);
  const double two_h = two_h_of(query);
  const Rational two_h_exact = exact ? Rational(2 * cosh_threshold_exact(query)) : Rational(0);
  const double xp = query.center.x(), yp = query.center.y();
  const double xq = query.source.x(), yq = query.source.y();

  // Im(gamma q) >= yp / (H + sqrt(H^2 - 1)) and (xp - u)^2 <= 2H yp v.
  const double h = std::max(1.0, two_h / 2.0);
  const double m_max = (h + std::sqrt(h * h - 1.0)) * yq / yp * (1.0 + 1e-8);
  const std::int64_t c_max = static_cast<std::int64_t>(std::sqrt(m_max) / yq + 1.0);

  std::vector<ModularElement> result;
  std::size_t visited = 0;
  auto consider = [&](const ModularElement& g) {
    if (++visited > limits.max_candidates)
      throw CapExceeded("ball enumeration exceeded the candidate cap");
    if (!query.spec.contains(g)) return;
    bool inside = false;
    if (exact) {
      inside = exact_within(query, two_h_exact, g);
    } else {
      double u = 0, v = 0;
      mobius_apply(g, xq, yq, u, v);
      inside = two_cosh(xp, yp, u, v) <= two_h;
    }
    if (inside) result.push_back(g);
  };

  for (std::int64_t c = 0; c <= c_max; ++c) {
    double reach = std::sqrt(m_max) + 1.0;
    std::int64_t d_lo = c == 0 ? 1 : static_cast<std::int64_t>(std::floor(-c * xq - reach));
    std::int64_t d_hi = c == 0 ? 1 : static_cast<std::int64_t>(std::ceil(-c * xq + reach));
    for (std::int64_t d = d_lo; d <= d_hi; ++d) {
      if (std::gcd(c, d) != 1) continue;
      std::int64_t a0 = 1, b0 = 0;
      if (c != 0 && !detail::unimodular_completion(c, d, a0, b0)) continue;
      ModularElement base(a0, b0, c, d);
      double u0 = 0, v = 0;
      mobius_apply(base, xq, yq, u0, v);
      double half = std::sqrt(two_h * yp * v) + 1.0;
      auto k_lo = static_cast<std::int64_t>(std::floor(xp - u0 - half));
      auto k_hi = static_cast<std::int64_t>(std::ceil(xp - u0 + half));
      for (std::int64_t k = k_lo; k <= k_hi; ++k)
        consider(ModularElement(a0 + k * c, b0 + k * d, c, d));
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<ModularElement> enumerate_ball_bfs_oracle(const BallQuery& query,
                                                      int max_word_length) {
  validate(query);
  // Search words h acting on the reduced source q0 = gamma_q q, then report
  // g = h * gamma_q. Tiles met by the geodesics inside the ball stay within
  // the pruning radius of the centre.
  Reduction source = reduce_to_F(query.source);
  Reduction centre = reduce_to_F(query.center);
  const double xp = query.center.x(), yp = query.center.y();
  const double xq = source.point.x(), yq = source.point.y();
  const double radius = std::acosh(std::max(1.0, two_h_of(query) / 2.0));
  const double prune_radius =
      2.0 * radius + std::abs(std::log(centre.point.y())) + std::abs(std::log(yq)) + 2.5;
  const double prune_two_cosh = 2.0 * std::cosh(prune_radius);

  struct Node {
    ModularElement h;
    int length;
  };
  std::unordered_set<ModularElement, ModularElementHash> seen{ModularElement::identity()};
  std::deque<Node> queue{{ModularElement::identity(), 0}};
  std::vector<ModularElement> result;
  const ModularElement generators[] = {ModularElement::S(), ModularElement::T(),
                                       ModularElement::T_inv()};

  auto value_of = [&](const ModularElement& h) {
    double u = 0, v = 0;
    mobius_apply(h, xq, yq, u, v);
    return two_cosh(xp, yp, u, v);
  };
  const double two_h = two_h_of(query);
  auto record = [&](const ModularElement& h, double value) {
    if (value > two_h * (1.0 + 1e-9)) return;
    ModularElement g = h * source.gamma;
    if (query.spec.contains(g) && within_ball(query, g)) result.push_back(g);
  };

  record(ModularElement::identity(), value_of(ModularElement::identity()));
  while (!queue.empty()) {
    Node node = queue.front();
    queue.pop_front();
    if (node.length >= max_word_length) continue;
    for (const auto& gen : generators) {
      ModularElement next = node.h * gen;
      if (!seen.insert(next).second) continue;
      double value = value_of(next);
      record(next, value);
      if (value <= prune_two_cosh) queue.push_back({next, node.length + 1});
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace hypsurf
