#include <benchmark/benchmark.h>

#include <vector>

#include "circlech/circlech.hpp"

namespace {

using namespace circlech;

GeneratingFamily two_atom() {
  return homogeneous_family(0.7, CircleMeasure({{1.0, 0.3}, {4.0, 0.6}}), 1.0, 4);
}

void BM_ClassicalMoment(benchmark::State& state) {
  const auto f = two_atom();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classical_moment(f, 0.1, 0.9, n));
}
BENCHMARK(BM_ClassicalMoment)->Arg(1)->Arg(8)->Arg(32);

void BM_FreeEtaSeries(benchmark::State& state) {
  const auto f = two_atom();
  for (auto _ : state) benchmark::DoNotOptimize(free_eta_series(f, 0.0, 1.0, 32));
}
BENCHMARK(BM_FreeEtaSeries);

void BM_SolveCharacteristicBatch(benchmark::State& state) {
  const auto f = two_atom();
  const auto grid = disk_grid(0.5, 4, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::vector<cplx> z(grid);
    solve_characteristic_batch(f, 0.0, 1.0, z);
    benchmark::DoNotOptimize(z.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_SolveCharacteristicBatch)->Arg(8)->Arg(64);

void BM_SolveChain(benchmark::State& state) {
  const auto f = two_atom();
  const auto times = uniform_times(1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_chain(f, times, 32));
}
BENCHMARK(BM_SolveChain)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
