#include <benchmark/benchmark.h>

#include "x0n/theta.hpp"

using namespace x0n;

static void BM_ThetaComponents(benchmark::State& state) {
  Level lv(state.range(0));
  cplx tau(0.2, 1.0), z(0.13, 0.9);
  for (auto _ : state) {
    auto th = theta_components(lv, tau, z, 1e-13);
    benchmark::DoNotOptimize(th);
  }
}
BENCHMARK(BM_ThetaComponents)->Arg(1)->Arg(2)->Arg(6);

static void BM_KudlaGreen(benchmark::State& state) {
  Level lv(1);
  for (auto _ : state) {
    auto g = kudla_green(lv, 0, Rat(0), 1.0, cplx(0.0, state.range(0)), 1e-9);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_KudlaGreen)->Arg(4)->Arg(12);

static void BM_VVEisenstein(benchmark::State& state) {
  Level lv(state.range(0));
  for (auto _ : state) {
    auto vv = vv_eisenstein(lv, cplx(0.0, 1.0), 2.0, state.range(1), 1);
    benchmark::DoNotOptimize(vv);
  }
}
BENCHMARK(BM_VVEisenstein)->Args({1, 100})->Args({1, 400})->Args({2, 200})
    ->Unit(benchmark::kMillisecond);
