#include <benchmark/benchmark.h>

#include <cmath>

#include "tseek/evaluation.hpp"
#include "tseek/oracle1d.hpp"

using namespace tseek;

namespace {

void BM_Path1DUnobstructed(benchmark::State& st) {
  const auto inst = gen_unobstructed_1d(static_cast<int>(st.range(0)), 1.0, std::sqrt(2.0) / 6);
  const StrategySpec1D spec;
  for (auto _ : st) benchmark::DoNotOptimize(evaluate(inst, spec));
}
BENCHMARK(BM_Path1DUnobstructed)->Arg(3)->Arg(10)->Arg(20);

void BM_Path1DRandom(benchmark::State& st) {
  const auto inst = gen_random_1d(7, static_cast<int>(st.range(0)));
  const StrategySpec1D spec;
  for (auto _ : st) benchmark::DoNotOptimize(evaluate(inst, spec));
}
BENCHMARK(BM_Path1DRandom)->Arg(24)->Arg(96);

void BM_GeodesicToRay(benchmark::State& st) {
  const auto inst = gen_random_1d(3, static_cast<int>(st.range(0)));
  const auto ray = visibility_boundary_ray(inst.terrain, inst.target.position);
  for (auto _ : st) benchmark::DoNotOptimize(geodesic_to_ray(inst.terrain, *ray));
}
BENCHMARK(BM_GeodesicToRay)->Arg(24)->Arg(96);

void BM_DiscretizedOracle(benchmark::State& st) {
  const auto inst = gen_random_1d(3);
  for (auto _ : st) benchmark::DoNotOptimize(geodesic_to_visibility(inst.terrain, inst.target, DiscretizedOptions{}));
}
BENCHMARK(BM_DiscretizedOracle)->Unit(benchmark::kMillisecond);

void BM_Path25DPitGrid(benchmark::State& st) {
  const auto inst = gen_pit_grid_25d(static_cast<double>(st.range(0)));
  const StrategySpec25D spec;
  for (auto _ : st) benchmark::DoNotOptimize(evaluate(inst, spec));
}
BENCHMARK(BM_Path25DPitGrid)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SegmentClear25D(benchmark::State& st) {
  const auto inst = gen_random_25d(5);
  const Point3 a{-1.5, -1.2, inst.terrain.max_height()}, b{1.7, 1.1, inst.terrain.min_height()};
  for (auto _ : st) benchmark::DoNotOptimize(inst.terrain.segment_clear(a, b));
}
BENCHMARK(BM_SegmentClear25D);

}  // namespace
BENCHMARK_MAIN();
