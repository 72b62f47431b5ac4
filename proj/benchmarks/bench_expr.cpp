#include <benchmark/benchmark.h>

#include "srgeo/expr.hpp"

namespace {

static void ParseSchwarzschildComponent(benchmark::State& state) {
  for (auto _ : state) {
    auto e = srgeo::parse_expression("-(1 - 2*m/r) * r^2 * sin(theta)^2 + exp(r)/cosh(r)");
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(ParseSchwarzschildComponent);

static void DifferentiateAndSimplify(benchmark::State& state) {
  auto e = srgeo::parse_expression("1/(1 - 2*m/r + e^2/r^2) * sin(theta)^2");
  for (auto _ : state) {
    auto d = srgeo::simplify(srgeo::differentiate(e, "r"));
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(DifferentiateAndSimplify);

static void Evaluate(benchmark::State& state) {
  auto e = srgeo::parse_expression("-(1 - 2*m/r) * r^2 * sin(theta)^2");
  srgeo::Env env = {{"m", 1.0}, {"r", 3.0}, {"theta", 1.2}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(srgeo::evaluate(e, env));
  }
}
BENCHMARK(Evaluate);

}  // namespace
