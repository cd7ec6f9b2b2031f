#include <benchmark/benchmark.h>

#include "tqf/central_value.hpp"
#include "tqf/classno.hpp"
#include "tqf/newform.hpp"
#include "tqf/siegel.hpp"
#include "tqf/ternary.hpp"

namespace {

void BM_RepCount(benchmark::State& state) {
  const auto q = tqf::forms::ramanujan_ten();
  const tqf::i64 n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(tqf::rep_count(q, n));
}
BENCHMARK(BM_RepCount)->Arg(1009)->Arg(100003)->Arg(10000019);

void BM_ClassNumber(benchmark::State& state) {
  const tqf::Discriminant d(-state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tqf::class_number(d));
}
BENCHMARK(BM_ClassNumber)->Arg(4003)->Arg(400003)->Arg(4000003);

void BM_Newform(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tqf::newform20(state.range(0)));
}
BENCHMARK(BM_Newform)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_CentralValue(benchmark::State& state) {
  static const auto f = tqf::newform20(200000);
  const tqf::i64 d = -state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(tqf::central_value(f, d));
}
BENCHMARK(BM_CentralValue)->Arg(3)->Arg(131)->Arg(1003)->Unit(benchmark::kMicrosecond);

void BM_BetaCounting(benchmark::State& state) {
  const auto q = tqf::forms::ramanujan_ten_partner();
  const tqf::i64 p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(tqf::beta_p_counting(q, 7, p));
}
BENCHMARK(BM_BetaCounting)->Arg(2)->Arg(5)->Arg(13)->Arg(31);

}  // namespace
BENCHMARK_MAIN();
