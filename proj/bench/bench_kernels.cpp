#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "bhp/bhp_dist.hpp"
#include "bhp/selftest.hpp"
#include "bhp/sweep.hpp"

namespace {

bhp::GridSpec bench_grid() {
  bhp::GridSpec g;
  g.step = 0.05;
  return g;
}

void BM_BuildTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bhp::build_table({}, {}, bench_grid()));
}
BENCHMARK(BM_BuildTable)->Unit(benchmark::kMillisecond);

void BM_BuildTableSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bhp::build_table_serial({}, {}, bench_grid()));
}
BENCHMARK(BM_BuildTableSerial)->Unit(benchmark::kMillisecond);

const bhp::BhpTable& sweep_table() {
  static const bhp::BhpTable t = bhp::build_table({}, {}, {});
  return t;
}

std::vector<double> sweep_input() {
  std::mt19937_64 rng(1);
  const auto z = bhp::sample_table(sweep_table(), 2000, -2.2, sweep_table().grid().back(), rng);
  std::vector<double> v;
  for (double x : z) v.push_back(std::pow(0.05 * x + 0.11, 1.0 / 0.45));
  return v;
}

void BM_Sweep(benchmark::State& state) {
  const auto v = sweep_input();
  for (auto _ : state) benchmark::DoNotOptimize(bhp::sweep(v, {}, sweep_table()));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

void BM_SweepSerial(benchmark::State& state) {
  const auto v = sweep_input();
  for (auto _ : state) benchmark::DoNotOptimize(bhp::sweep_serial(v, {}, sweep_table()));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
