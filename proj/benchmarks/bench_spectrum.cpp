#include <benchmark/benchmark.h>

#include "dcstring/compare.hpp"
#include "dcstring/exact.hpp"
#include "dcstring/highfreq.hpp"
#include "dcstring/lowfreq.hpp"

namespace {

dcstring::CoefficientSet example() { return dcstring::make_coefficient_set(-1, 1, "1", "1+x^2", "1", "1+x"); }

void BM_Eigenvalue(benchmark::State& state) {
  const auto inst = dcstring::make_instance(example(), 0.05);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dcstring::eigenvalue(inst, n));
}
BENCHMARK(BM_Eigenvalue)->Arg(1)->Arg(5)->Arg(15)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_LimitEigenpair(benchmark::State& state) {
  const auto cs = example();
  for (auto _ : state) benchmark::DoNotOptimize(dcstring::build_lowfreq(cs, static_cast<int>(state.range(0))).nu);
}
BENCHMARK(BM_LimitEigenpair)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_WkbFrame(benchmark::State& state) {
  const auto cs = example();
  for (auto _ : state) benchmark::DoNotOptimize(dcstring::build_wkb_frame(cs).h0);
}
BENCHMARK(BM_WkbFrame)->Unit(benchmark::kMillisecond);

void BM_Pencil(benchmark::State& state) {
  const auto cs = example();
  const auto frame = dcstring::build_wkb_frame(cs);
  for (auto _ : state) benchmark::DoNotOptimize(dcstring::pencil_solve(cs, frame, 1.26).delta);
}
BENCHMARK(BM_Pencil)->Unit(benchmark::kMicrosecond);

void BM_FrequencyForIndex(benchmark::State& state) {
  const auto cs = example();
  const auto frame = dcstring::build_wkb_frame(cs);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dcstring::frequency_for_index(frame, cs, 0.05, n).omega);
}
BENCHMARK(BM_FrequencyForIndex)->Arg(5)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_ComparisonTable(benchmark::State& state) {
  const auto inst = dcstring::make_instance(example(), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(dcstring::comparison_table(inst, {5, 10, 15}).size());
}
BENCHMARK(BM_ComparisonTable)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
