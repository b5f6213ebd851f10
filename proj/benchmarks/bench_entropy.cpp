#include <benchmark/benchmark.h>

#include <random>

#include "wrisk/entropy.hpp"
#include "wrisk/synth.hpp"

namespace {

std::vector<double> uniform_scores(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 100.0);
  std::vector<double> scores(n);
  for (auto& s : scores) s = dist(rng);
  return scores;
}

void BM_BuildHistogram(benchmark::State& state) {
  auto scores = uniform_scores(state.range(0), 1);
  wrisk::HistogramConfig cfg;
  for (auto _ : state) {
    auto hist = wrisk::build_histogram(scores, cfg);
    benchmark::DoNotOptimize(hist);
  }
}
BENCHMARK(BM_BuildHistogram)->Arg(100)->Arg(10000);

void BM_KlDivergence(benchmark::State& state) {
  wrisk::HistogramConfig cfg;
  auto p = wrisk::build_histogram(uniform_scores(500, 2), cfg);
  auto q = wrisk::build_histogram(uniform_scores(500, 3), cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wrisk::kl_divergence(p, q));
  }
}
BENCHMARK(BM_KlDivergence);

void BM_AssessTraveler(benchmark::State& state) {
  auto spec = wrisk::SynthSpec::with_default_profiles();
  spec.seed = 4;
  auto pop = wrisk::from_records(wrisk::generate(spec).records);
  auto assign = wrisk::categorize(pop, {});
  wrisk::AssessConfig cfg;
  auto refs = wrisk::build_references(pop, assign, cfg.binning);
  const auto& scores = pop.find("s001")->genuine;
  for (auto _ : state) {
    auto result = wrisk::assess_traveler("s001", wrisk::ScoreClass::Genuine,
                                         scores, refs, cfg);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_AssessTraveler);

}  // namespace
