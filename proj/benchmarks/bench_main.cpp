// Microbenchmarks for the transform kernels (expanded as modules land).

#include <benchmark/benchmark.h>

#include "dbar/cauchy.hpp"
#include "dbar/phantom.hpp"
#include "dbar/potential.hpp"

namespace {

void BM_CauchySolid(benchmark::State& state) {
  const int n = int(state.range(0));
  auto c = dbar::make_phantom("bump", n, 1.6);
  auto Q = dbar::gamma_to_Q(c);
  for (auto _ : state) {
    auto out = dbar::cauchy_solid(Q.Q12);
    benchmark::DoNotOptimize(out.v.data());
  }
}
BENCHMARK(BM_CauchySolid)->Arg(32)->Arg(64)->Arg(128);

void BM_GreenConvolve(benchmark::State& state) {
  const int n = int(state.range(0));
  auto c = dbar::make_phantom("bump", n, 1.6);
  auto Q = dbar::gamma_to_Q(c);
  const dbar::Complex k(5.0, 2.0);
  for (auto _ : state) {
    auto out = dbar::green_convolve(Q.Q12, k);
    benchmark::DoNotOptimize(out.v.data());
  }
}
BENCHMARK(BM_GreenConvolve)->Arg(32)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
