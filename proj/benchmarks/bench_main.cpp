#include <benchmark/benchmark.h>

#include "betadyn/admissibility.hpp"
#include "betadyn/beta_core.hpp"
#include "betadyn/cantor.hpp"
#include "betadyn/dimension.hpp"
#include "betadyn/exponents.hpp"

using namespace betadyn;

namespace {

const BetaParam& golden() {
  static const BetaParam bp = BetaParam::from_literal("root:[-1,-1,1]@[1,2]");
  return bp;
}

CantorSpec reference_spec() {
  BetaParam bp = BetaParam::from_literal("2");
  return CantorSpec(bp, make_point(bp, "1/3"), 2, Rational(1, 2), 6);
}

void BM_ExpandGolden(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Real x = make_point(golden(), "1/3");
  for (auto _ : state) benchmark::DoNotOptimize(expand(golden(), x, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExpandGolden)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_CountWords(benchmark::State& state) {
  BetaParam bp = BetaParam::from_literal("5/2");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_words(bp, n));
}
BENCHMARK(BM_CountWords)->Arg(20)->Arg(200);

void BM_EnumerateGolden(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_words(golden(), n));
}
BENCHMARK(BM_EnumerateGolden)->Arg(8)->Arg(16);

void BM_Construct(benchmark::State& state) {
  CantorSpec spec = reference_spec();
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(construct_point(spec, depth));
}
BENCHMARK(BM_Construct)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);

void BM_ExponentsOnConstruction(benchmark::State& state) {
  CantorSpec spec = reference_spec();
  const auto horizon = static_cast<std::size_t>(state.range(0));
  DigitWord w = construct_point(spec, spec.required_depth(horizon));
  EstimateOptions opts{0.75};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_exponents(spec.bp(), w, spec.x0(), horizon, opts));
  }
}
BENCHMARK(BM_ExponentsOnConstruction)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_LocalDimensionSeries(benchmark::State& state) {
  CantorSpec spec = reference_spec();
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(local_dimension_series(spec, k));
}
BENCHMARK(BM_LocalDimensionSeries)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DimMaxOverV(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dim_formula_max_over_v(0.5));
}
BENCHMARK(BM_DimMaxOverV);

}  // namespace

BENCHMARK_MAIN();
