#include <benchmark/benchmark.h>

#include "wrisk/menagerie.hpp"
#include "wrisk/rates.hpp"
#include "wrisk/synth.hpp"

namespace {

wrisk::SynthSpec spec_for(std::size_t subjects) {
  auto spec = wrisk::SynthSpec::with_default_profiles();
  spec.n_subjects = subjects;
  spec.n_genuine_per_subject = 8;
  spec.n_impostor_per_subject = 24;
  spec.seed = 15;
  return spec;
}

void BM_Ingest(benchmark::State& state) {
  auto records = wrisk::generate(spec_for(state.range(0))).records;
  for (auto _ : state) {
    auto pop = wrisk::from_records(records);
    benchmark::DoNotOptimize(pop);
  }
}
BENCHMARK(BM_Ingest)->Arg(568)->Arg(2000);

void BM_Categorize(benchmark::State& state) {
  auto pop = wrisk::from_records(
      wrisk::generate(spec_for(state.range(0))).records);
  for (auto _ : state) {
    auto assign = wrisk::categorize(pop, {});
    benchmark::DoNotOptimize(assign);
  }
}
BENCHMARK(BM_Categorize)->Arg(568)->Arg(2000)->Arg(8000);

void BM_Sweep(benchmark::State& state) {
  auto pop = wrisk::from_records(wrisk::generate(spec_for(568)).records);
  auto assign = wrisk::categorize(pop, {});
  std::vector<double> thresholds;
  for (int i = 0; i < state.range(0); ++i)
    thresholds.push_back(100.0 * (i + 1) / (state.range(0) + 1));
  auto grid = wrisk::ThresholdGrid::make(thresholds);
  for (auto _ : state) {
    auto rates = wrisk::sweep(pop, assign, grid);
    benchmark::DoNotOptimize(rates);
  }
}
BENCHMARK(BM_Sweep)->Arg(3)->Arg(101);

}  // namespace
