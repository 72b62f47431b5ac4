#include <benchmark/benchmark.h>

#include "srgeo/catalog.hpp"
#include "srgeo/tensor.hpp"

namespace {

static void Cometric4x4(benchmark::State& state) {
  srgeo::Mat g(4, 4);
  g << -0.5, 0, 0, 0.1, 0, 2.0, 0, 0, 0, 0, 0.0, 0, 0.1, 0, 0, 9.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(srgeo::cometric(g));
  }
}
BENCHMARK(Cometric4x4);

static void EvalMetricSchwarzschild(benchmark::State& state) {
  srgeo::MetricSpec spec = srgeo::get_metric("schwarzschild", {{"m", 1.0}});
  srgeo::Point p(4);
  p << 0.0, 3.0, 1.0, 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(srgeo::eval_metric(spec, p));
  }
}
BENCHMARK(EvalMetricSchwarzschild);

}  // namespace
