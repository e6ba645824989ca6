#include <benchmark/benchmark.h>

#include <filesystem>

#include "cmap/cmap.hpp"

namespace {

using namespace cmap;

Prepotential load(const char* name) { return load_prepotential(std::filesystem::path(CMAP_FIXTURE_DIR) / name); }

FiberPoint point_for(int n) {
  PolydiskSampler rng(17);
  return {rng.polydisk(n, {0.0, 1.0}, 0.3), rng.polydisk(n, 0.0, 0.5)};
}

void BM_Jet(benchmark::State& state, const char* name) {
  const Prepotential f = load(name);
  const FiberPoint p = point_for(f.dimension());
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jet(f, p.z, order));
}
BENCHMARK_CAPTURE(BM_Jet, cubic1, "cubic1.json")->Arg(2)->Arg(4);
BENCHMARK_CAPTURE(BM_Jet, stu_chart, "stu_chart.json")->Arg(2)->Arg(4);
BENCHMARK_CAPTURE(BM_Jet, stu_cone, "stu_cone.json")->Arg(2)->Arg(4);

void BM_HkMetric(benchmark::State& state, const char* name) {
  const Prepotential f = load(name);
  const FiberPoint p = point_for(f.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(hk_metric(f, p));
}
BENCHMARK_CAPTURE(BM_HkMetric, cubic1, "cubic1.json");
BENCHMARK_CAPTURE(BM_HkMetric, stu_chart, "stu_chart.json");

void BM_Christoffel(benchmark::State& state, const char* name) {
  const Prepotential f = load(name);
  const FiberPoint p = point_for(f.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(christoffel(f, p));
}
BENCHMARK_CAPTURE(BM_Christoffel, cubic1, "cubic1.json");
BENCHMARK_CAPTURE(BM_Christoffel, stu_chart, "stu_chart.json");

void BM_HessianOracle(benchmark::State& state, const char* name) {
  const Prepotential f = load(name);
  const FiberPoint p = point_for(f.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(hessian_oracle_residual(f, p));
}
BENCHMARK_CAPTURE(BM_HessianOracle, cubic1, "cubic1.json");
BENCHMARK_CAPTURE(BM_HessianOracle, stu_chart, "stu_chart.json");

void BM_Curvature(benchmark::State& state) {
  const Prepotential f = load("stu_chart.json");
  const FiberPoint p = point_for(f.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(curvature(f, p));
}
BENCHMARK(BM_Curvature);

}  // namespace

BENCHMARK_MAIN();
