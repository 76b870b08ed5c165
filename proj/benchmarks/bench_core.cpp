#include <benchmark/benchmark.h>

#include "qprobe/distributed.hpp"
#include "qprobe/grover.hpp"
#include "qprobe/state_vector.hpp"

namespace {

using namespace qprobe;

void BM_GroverStep(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  auto s = new_uniform(k);
  const MarkedSet marked{(BasisIndex{1} << k) - 1};
  for (auto _ : state) {
    s = apply_diffusion(apply_phase_oracle(std::move(s), marked));
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.dimension()));
}
BENCHMARK(BM_GroverStep)->DenseRange(8, 20, 4);

void BM_ProbeReadout(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const MarkedSet marked{3};
  const auto grover = run_grover(k, marked);
  Rng rng(1);
  for (auto _ : state) {
    auto composed = apply_boolean_oracle(compose_with_probe(grover.state), marked);
    auto outcome = measure_probe(composed, rng);
    benchmark::DoNotOptimize(outcome.record.outcome);
  }
}
BENCHMARK(BM_ProbeReadout)->DenseRange(8, 16, 4);

void BM_FindWinner(benchmark::State& state) {
  std::vector<int> bits(static_cast<std::size_t>(state.range(0)), 0);
  bits[bits.size() / 3] = 1;
  for (auto _ : state) {
    auto w = find_winner(bits);
    benchmark::DoNotOptimize(w.decision_steps);
  }
}
BENCHMARK(BM_FindWinner)->RangeMultiplier(4)->Range(4, 4096);

void BM_Trial(benchmark::State& state, Strategy strategy) {
  ExperimentConfig config;
  config.db_size = 1024;
  config.num_subsystems = static_cast<std::uint64_t>(state.range(0));
  config.global_marked = MarkedSet{777};
  config.strategy = strategy;
  config.seed = 1;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    auto report = run_trial(config, trial++);
    benchmark::DoNotOptimize(report.correct);
  }
}
BENCHMARK_CAPTURE(BM_Trial, probe, Strategy::probe)->RangeMultiplier(4)->Range(1, 64);
BENCHMARK_CAPTURE(BM_Trial, verify, Strategy::semiclassical_verify)->RangeMultiplier(4)->Range(1, 64);

}  // namespace

BENCHMARK_MAIN();
