#include "hypsurf/search.hpp"

#include "hypsurf/random.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace hypsurf {

namespace {

constexpr int kNewtonIterations = 80;

// Point at hyperbolic distance d from centre in direction theta (measured
// from the upward vertical).
std::pair<double, double> point_at(double cx, double cy, double d, double theta) {
  std::complex<double> w = std::tanh(d / 2.0) * std::polar(1.0, theta);
  std::complex<double> i(0.0, 1.0);
  std::complex<double> z = i * (1.0 + w) / (1.0 - w);
  return {cx + cy * z.real(), cy * z.imag()};
}

struct Residual {
  double value;        // 2cosh d_Y - target
  double gx, gy;       // gradient wrt the moving point
};

// Surface residual to a fixed point, linearised on the minimising branch.
Residual surface_residual(const SurfaceDistanceEngine& engine,
                          const SurfaceDistanceEngine::Prepared& fixed, double fixed_x,
                          double fixed_y, double x, double y, double target) {
  auto moving = engine.prepare(UHPoint::approx(x, y));
  std::vector<ModularElement> ties;
  double value = engine.min_two_cosh(fixed, moving, &ties);
  // value = 2cosh(fixed, gamma z) with gamma = to_base_fixed^-1 * g * to_base_moving.
  ModularElement gamma = fixed.to_base.inverse() * ties.front() * moving.to_base;
  double px = 0, py = 0;
  mobius_apply(gamma.inverse(), fixed_x, fixed_y, px, py);
  double dx = x - px;
  Residual r;
  r.value = value - target;
  r.gx = 2.0 * dx / (y * py);
  r.gy = (y * y - dx * dx - py * py) / (y * y * py);
  return r;
}

// Gauss-Newton with Levenberg damping on the moving point.
std::optional<std::pair<double, double>> solve_point(
    const SurfaceDistanceEngine& engine, const std::vector<UHPoint>& placed,
    const std::vector<SurfaceDistanceEngine::Prepared>& prepared, double x, double y,
    double target) {
  double lambda = 1e-6;
  auto evaluate = [&](double ex, double ey, std::vector<Residual>& out) {
    out.clear();
    double worst = 0.0;
    for (std::size_t l = 0; l < placed.size(); ++l) {
      out.push_back(surface_residual(engine, prepared[l], placed[l].x(), placed[l].y(), ex, ey,
                                     target));
      worst = std::max(worst, std::abs(out.back().value));
    }
    return worst;
  };

  std::vector<Residual> res, trial;
  double worst = evaluate(x, y, res);
  for (int it = 0; it < kNewtonIterations; ++it) {
    if (worst <= 1e-13 * target) return std::make_pair(x, y);
    double jxx = 0, jxy = 0, jyy = 0, bx = 0, by = 0;
    for (const auto& r : res) {
      jxx += r.gx * r.gx;
      jxy += r.gx * r.gy;
      jyy += r.gy * r.gy;
      bx -= r.gx * r.value;
      by -= r.gy * r.value;
    }
    bool improved = false;
    for (int attempt = 0; attempt < 30 && !improved; ++attempt) {
      double axx = jxx * (1.0 + lambda), ayy = jyy * (1.0 + lambda);
      double det = axx * ayy - jxy * jxy;
      if (!(std::abs(det) > 0.0)) {
        lambda *= 10.0;
        continue;
      }
      double sx = (ayy * bx - jxy * by) / det;
      double sy = (axx * by - jxy * bx) / det;
      // Keep the step within a fraction of the height so y stays positive.
      double limit = 0.5 * y;
      double len = std::hypot(sx, sy);
      if (len > limit) {
        sx *= limit / len;
        sy *= limit / len;
      }
      double nx = x + sx, ny = y + sy;
      if (!(ny > 0.0) || !std::isfinite(nx)) {
        lambda *= 10.0;
        continue;
      }
      double w = evaluate(nx, ny, trial);
      if (w < worst) {
        x = nx;
        y = ny;
        worst = w;
        res.swap(trial);
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) break;
  }
  if (worst <= 1e-12 * target) return std::make_pair(x, y);
  return std::nullopt;
}

}  // namespace

double equilateral_residual(std::span<const UHPoint> points, const SubgroupSpec& spec,
                            double target_two_cosh) {
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      worst = std::max(worst, std::abs(surface_distance_oracle(points[i], points[j], spec).two_cosh() -
                                       target_two_cosh));
  return worst;
}

std::optional<EquilateralCandidate> equilateral_search(const SubgroupSpec& spec, std::size_t k,
                                                       double d,
                                                       const EquilateralOptions& options) {
  if (k < 2) throw std::invalid_argument("equilateral search needs k >= 2");
  if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("distance must be positive");

  const double target = 2.0 * std::cosh(d);
  const SurfaceDistanceEngine engine(spec);
  Rng rng(options.seed);
  const UHPoint anchor(Rational(0), Rational(2));
  std::size_t spent = 0;

  auto finish = [&](const std::vector<UHPoint>& raw) -> std::optional<EquilateralCandidate> {
    std::vector<UHPoint> reps;
    for (const auto& z : raw) {
      UHPoint exact = z.is_exact() ? z : UHPoint::exact_from(z.x(), z.y());
      reps.push_back(reduce_to_subgroup_domain(exact, spec).point);
    }
    double residual = equilateral_residual(reps, spec, target);
    if (residual > options.tolerance) return std::nullopt;
    return EquilateralCandidate{std::move(reps), DistanceKey::approx(target), residual};
  };

  const auto& cosets = spec.cosets();
  for (std::size_t restart = 0; spent < options.budget; ++restart) {
    // Later restarts move p1 below the cusp, where circles of radius d wrap
    // around less.
    UHPoint p1 = anchor;
    if (restart > 0) {
      double ax = 0.0, ay = 0.0;
      do {
        ax = rng.uniform(-0.5, 0.5);
        ay = rng.uniform(0.9, 1.6);
      } while (ax * ax + ay * ay <= 1.0);
      mobius_apply(cosets[rng.below(cosets.size())], ax, ay, ax, ay);
      p1 = UHPoint::approx(ax, ay);
    }
    std::vector<UHPoint> placed{p1};
    double theta = restart == 0 ? 0.0 : rng.uniform(0.0, 2.0 * std::numbers::pi);
    auto [x2, y2] = point_at(p1.x(), p1.y(), d, theta);
    placed.push_back(UHPoint::approx(x2, y2));
    ++spent;

    std::vector<SurfaceDistanceEngine::Prepared> prepared;
    for (const auto& z : placed) prepared.push_back(engine.prepare(z));
    // p2 may sit closer to p1 on the surface than in the plane.
    auto first = engine.min_two_cosh(prepared[0], prepared[1]);
    if (!approx_same_distance(first, target)) {
      auto solved = solve_point(engine, {p1}, {prepared[0]}, x2, y2, target);
      if (!solved) continue;
      placed[1] = UHPoint::approx(solved->first, solved->second);
      prepared[1] = engine.prepare(placed[1]);
    }

    bool complete = true;
    for (std::size_t m = 2; m < k && complete; ++m) {
      complete = false;
      for (int attempt = 0; attempt < 8 && spent < options.budget; ++attempt) {
        ++spent;
        std::size_t from = rng.below(placed.size());
        auto [sx, sy] = point_at(placed[from].x(), placed[from].y(), d,
                                 rng.uniform(0.0, 2.0 * std::numbers::pi));
        auto solved = solve_point(engine, placed, prepared, sx, sy, target);
        if (!solved) continue;
        UHPoint z = UHPoint::approx(solved->first, solved->second);
        auto pz = engine.prepare(z);
        // Reject a point that coincides with one already placed.
        bool fresh = true;
        for (const auto& p : prepared)
          if (approx_same_distance(engine.min_two_cosh(p, pz), 2.0)) fresh = false;
        if (!fresh) continue;
        placed.push_back(z);
        prepared.push_back(pz);
        complete = true;
        break;
      }
    }
    if (!complete) continue;
    if (auto candidate = finish(placed)) return candidate;
  }
  return std::nullopt;
}

}  // namespace hypsurf
