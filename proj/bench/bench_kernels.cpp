// Parallel kernels against their serial references.
#include "hypsurf/experiment.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace hypsurf;

namespace {

BallQuery ball_query(double radius) {
  return {SubgroupSpec::full(), UHPoint(Rational(1, 7), Rational(3, 2)), UHPoint(Rational(-2, 9), Rational(5, 4)),
          std::cosh(radius), std::nullopt};
}

void BM_enumerate_ball(benchmark::State& state) {
  auto q = ball_query(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ball(q));
}

void BM_enumerate_ball_serial(benchmark::State& state) {
  auto q = ball_query(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ball_serial(q));
}

void BM_distance_stats(benchmark::State& state) {
  auto spec = SubgroupSpec::principal(2);
  auto pts = sample_points(spec, static_cast<std::size_t>(state.range(0)), Sampler::RationalGrid, 1);
  for (auto _ : state) benchmark::DoNotOptimize(distance_stats(pts, spec));
}

void BM_distance_stats_serial(benchmark::State& state) {
  auto spec = SubgroupSpec::principal(2);
  auto pts = sample_points(spec, static_cast<std::size_t>(state.range(0)), Sampler::RationalGrid, 1);
  for (auto _ : state) benchmark::DoNotOptimize(distance_stats_serial(pts, spec));
}

}  // namespace

BENCHMARK(BM_enumerate_ball)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_ball_serial)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distance_stats)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distance_stats_serial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
