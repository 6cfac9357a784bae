#include <benchmark/benchmark.h>

#include "eqens/dilog.hpp"
#include "eqens/inversion.hpp"
#include "eqens/vershik.hpp"

namespace {

void BM_Dilog(benchmark::State& state) {
  double z = -3.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eqens::dilog(z));
    z = z < 0.9 ? z + 1e-3 : -3.7;
  }
}
BENCHMARK(BM_Dilog);

void BM_ForwardMap(benchmark::State& state) {
  const eqens::ProfileParams p(0.35, static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(eqens::forward_map(p));
}
BENCHMARK(BM_ForwardMap)->Arg(0)->Arg(1)->Arg(30)->Arg(300);

void BM_Invert(benchmark::State& state) {
  const double rho = 0.3;
  const double m = 0.5 * rho * (1 - rho) * static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(eqens::invert({rho, m}));
}
BENCHMARK(BM_Invert)->Arg(10)->Arg(80)->Arg(99);

void BM_IdentifyCurves(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(eqens::identify_curves(0.4, 0.05, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_IdentifyCurves)->Arg(256)->Arg(1024);

}  // namespace
