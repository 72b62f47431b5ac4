#include <benchmark/benchmark.h>

#include "srgeo/strip_map.hpp"

namespace {

static void HexagonMapInterior(benchmark::State& state) {
  srgeo::StripConfig cfg = srgeo::preset("hexagon", 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(srgeo::sc_map({0.8, 0.3}, cfg));
  }
}
BENCHMARK(HexagonMapInterior);

static void HexagonLeaf(benchmark::State& state) {
  srgeo::StripConfig cfg = srgeo::preset("hexagon", 1.0);
  for (auto _ : state) {
    auto ps = srgeo::foliation(cfg, 2, {-2.0, 2.0}, 16);
    benchmark::DoNotOptimize(ps);
  }
}
BENCHMARK(HexagonLeaf);

}  // namespace
