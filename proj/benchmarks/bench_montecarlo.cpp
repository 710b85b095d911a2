#include <benchmark/benchmark.h>

#include "impactsim/montecarlo.hpp"

using namespace impactsim;

namespace {

GeneratorConfig config_for(SimulationModel model) {
  GeneratorConfig cfg;
  cfg.model = std::move(model);
  cfg.phases = PhaseSettings(0.3, 0.7, -0.2);
  cfg.seed = 42;
  return cfg;
}

void BM_GenerateQuantum(benchmark::State& state) {
  EventGenerator gen(config_for(SimulationModel::quantum()));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen.event_at(trial++));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GenerateQuantum);

void BM_GenerateCausal(benchmark::State& state) {
  EventGenerator gen(config_for(SimulationModel::multisimultaneous()));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen.event_at(trial++));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GenerateCausal);

void BM_Estimate(benchmark::State& state) {
  const auto events =
      generate_events(config_for(SimulationModel::quantum()), state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate(events));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Estimate)->Arg(1 << 14)->Arg(1 << 18);

void BM_CoincidenceFilter(benchmark::State& state) {
  const auto events =
      generate_events(config_for(SimulationModel::multisimultaneous()), state.range(0));
  const ArmLengths arms = ArmLengths::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(coincidence_filter(events, arms, Subensemble::Long));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoincidenceFilter)->Arg(1 << 14)->Arg(1 << 18);

}  // namespace

BENCHMARK_MAIN();
