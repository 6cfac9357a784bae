#include <benchmark/benchmark.h>

#include "eqens/llt.hpp"

namespace {

void BM_ExactPmf(benchmark::State& state) {
  const auto model = eqens::WeightedSumModel::constant(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(eqens::exact_pmf(model));
}
BENCHMARK(BM_ExactPmf)->Arg(40)->Arg(80)->Arg(160)->Arg(250)->Unit(benchmark::kMillisecond);

void BM_SupError(benchmark::State& state) {
  const auto model = eqens::WeightedSumModel::constant(static_cast<int>(state.range(0)), 0.5);
  const auto pmf = eqens::exact_pmf(model);
  const auto m = eqens::moments(model);
  for (auto _ : state) benchmark::DoNotOptimize(eqens::sup_error(pmf, m, m.lambda));
}
BENCHMARK(BM_SupError)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_CharFn(benchmark::State& state) {
  const auto model = eqens::WeightedSumModel::constant(static_cast<int>(state.range(0)), 0.3);
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eqens::char_fn(model, s, 0.01));
    s += 1e-6;
  }
}
BENCHMARK(BM_CharFn)->Arg(12)->Arg(160);

}  // namespace
