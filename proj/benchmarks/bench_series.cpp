#include <benchmark/benchmark.h>

#include <cmath>

#include "circlech/series.hpp"

namespace {

circlech::TruncatedSeries sample(std::size_t order) {
  circlech::TruncatedSeries f(order);
  f[1] = 1.0;
  for (std::size_t k = 2; k <= order; ++k) f[k] = circlech::cplx(std::cos(0.7 * k), std::sin(1.3 * k)) / double(k * k);
  return f;
}

void BM_SeriesMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sample(n), b = sample(n);
  for (auto _ : state) benchmark::DoNotOptimize(circlech::series_mul(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeriesMul)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_SeriesReversion(benchmark::State& state) {
  const auto f = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(circlech::series_reversion(f));
}
BENCHMARK(BM_SeriesReversion)->RangeMultiplier(2)->Range(8, 64);

}  // namespace
