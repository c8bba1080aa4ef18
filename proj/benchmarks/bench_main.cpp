// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "sausage/brownian.hpp"
#include "sausage/capacity.hpp"
#include "sausage/functionals.hpp"
#include "sausage/wos.hpp"

namespace {

using namespace sausage;

BallUnion sausage_of(double t, double delta) {
  RngStream rng(7);
  return build_sausage(sample_skeleton(rng, Point4{}, t, delta), 1.0);
}

void BM_DistQuery(benchmark::State& state) {
  const BallUnion u = sausage_of(static_cast<double>(state.range(0)), 0.1);
  RngStream rng(8);
  const double r = u.bounding_radius();
  for (auto _ : state) {
    const Point4 p = sphere_sample(rng, Point4{}, r * rng.uniform());
    benchmark::DoNotOptimize(u.dist(p));
  }
  state.counters["balls"] = static_cast<double>(u.size());
}
BENCHMARK(BM_DistQuery)->Arg(100)->Arg(1000)->Arg(10000);

void BM_DistBruteForce(benchmark::State& state) {
  const BallUnion u = sausage_of(static_cast<double>(state.range(0)), 0.1);
  RngStream rng(8);
  const double r = u.bounding_radius();
  for (auto _ : state) {
    const Point4 p = sphere_sample(rng, Point4{}, r * rng.uniform());
    benchmark::DoNotOptimize(u.dist_brute_force(p));
  }
}
BENCHMARK(BM_DistBruteForce)->Arg(100)->Arg(1000);

void BM_Skeleton(benchmark::State& state) {
  const auto& law = ExitTimeLaw::standard();
  RngStream rng(9);
  const double t = static_cast<double>(state.range(0));
  std::size_t points = 0;
  for (auto _ : state) {
    const PathSkeleton s = sample_skeleton(rng, Point4{}, t, 0.1, law);
    points += s.size();
    benchmark::DoNotOptimize(s.points.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(points));
}
BENCHMARK(BM_Skeleton)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_WosWalker(benchmark::State& state) {
  const BallUnion u = sausage_of(static_cast<double>(state.range(0)), 0.1);
  const double r = 2.0 * u.bounding_radius();
  const Ball sphere(Point4{}, r);
  const WosParams params;
  RngStream rng(10);
  std::uint64_t steps = 0;
  for (auto _ : state) {
    const Point4 z = sphere_sample(rng, Point4{}, r);
    const HitOutcome h = wos_hit(rng, z, u, nullptr, sphere, params);
    steps += h.steps;
  }
  state.counters["steps/walker"] =
      benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_WosWalker)->Arg(100)->Arg(1000);

void BM_D0Path(benchmark::State& state) {
  RngStream rng(11);
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_functionals(rng, t, default_d_step(t), {}, StepRule::Adaptive).d0);
  }
}
BENCHMARK(BM_D0Path)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
