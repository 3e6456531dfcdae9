#include <benchmark/benchmark.h>

#include "x0n/lattice.hpp"

using namespace x0n;

static void BM_EnumerateVectors(benchmark::State& state) {
  Level lv(6);
  for (auto _ : state) {
    auto vs = enumerate_vectors(lv, 1, Rat(-1, 24), state.range(0));
    benchmark::DoNotOptimize(vs);
  }
}
BENCHMARK(BM_EnumerateVectors)->Arg(8)->Arg(16)->Arg(32);

static void BM_HeegnerDegree(benchmark::State& state) {
  Level lv(state.range(0));
  Rat n(state.range(1), 1);
  for (auto _ : state) {
    auto d = heegner_degree(lv, 0, n);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_HeegnerDegree)->Args({1, 1})->Args({6, 1})->Args({30, 2});

static void BM_WeilWord(benchmark::State& state) {
  WeilRep rho(state.range(0));
  Mat2 g{1, 0, 0, 1};
  for (long k = 0; k < 5; ++k) g = g * Mat2{1, 3, 0, 1} * Mat2{0, -1, 1, 0};
  auto w = gamma_to_word(g);
  std::vector<std::complex<double>> e0(rho.dim(), 0.0);
  e0[0] = 1.0;
  for (auto _ : state) {
    auto v = rho.apply_inverse(w, e0);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_WeilWord)->Arg(1)->Arg(5)->Arg(30);
