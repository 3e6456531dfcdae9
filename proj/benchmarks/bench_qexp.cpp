#include <benchmark/benchmark.h>

#include "x0n/qexp.hpp"

using namespace x0n;

static void BM_DeltaSingleProduct(benchmark::State& state) {
  Level lv(state.range(0));
  long order = state.range(1);
  for (auto _ : state) {
    auto s = delta_n_single_product(lv, order);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_DeltaSingleProduct)->Args({6, 200})->Args({6, 500})->Args({30, 500})
    ->Unit(benchmark::kMillisecond);

static void BM_DeltaFactored(benchmark::State& state) {
  Level lv(state.range(0));
  long order = state.range(1);
  for (auto _ : state) {
    auto s = delta_n_factored(lv, order);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_DeltaFactored)->Args({6, 200})->Args({6, 500})->Args({30, 500})
    ->Unit(benchmark::kMillisecond);

static void BM_SeriesInverse(benchmark::State& state) {
  auto f = delta_series(state.range(0));
  for (auto _ : state) {
    auto g = f.inverse();
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_SeriesInverse)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
