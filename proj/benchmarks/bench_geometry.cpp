#include <benchmark/benchmark.h>

#include "srgeo/catalog.hpp"
#include "srgeo/geometry.hpp"

namespace {

static void ChristoffelConstruction(benchmark::State& state) {
  srgeo::MetricSpec spec = srgeo::get_metric("schwarzschild", {{"m", 1.0}});
  for (auto _ : state) {
    srgeo::ChristoffelFirst chr(spec);
    benchmark::DoNotOptimize(chr);
  }
}
BENCHMARK(ChristoffelConstruction);

static void RiemannAtPoint(benchmark::State& state) {
  srgeo::ChristoffelFirst chr(srgeo::get_metric("schwarzschild", {{"m", 1.0}}));
  srgeo::Point p(4);
  p << 0.0, 3.0, 1.0, 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(srgeo::riemann_at(chr, p));
  }
}
BENCHMARK(RiemannAtPoint);

}  // namespace
