#include <benchmark/benchmark.h>

#include "impactsim/amplitude.hpp"
#include "impactsim/probability.hpp"
#include "impactsim/rng.hpp"

using namespace impactsim;

namespace {

PhaseSettings next_phases(SplitMix64& rng) {
  return PhaseSettings(rng.next_double() * 6.28, rng.next_double() * 6.28,
                       rng.next_double() * 6.28);
}

void BM_QmJoint(benchmark::State& state) {
  SplitMix64 rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qm_joint(next_phases(rng)));
  }
}
BENCHMARK(BM_QmJoint);

void BM_McJoint(benchmark::State& state) {
  SplitMix64 rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_joint(next_phases(rng)));
  }
}
BENCHMARK(BM_McJoint);

void BM_SuperposeFull(benchmark::State& state) {
  SplitMix64 rng(3);
  const auto members = long_class_members();
  for (auto _ : state) {
    benchmark::DoNotOptimize(superpose(members, next_phases(rng)));
  }
}
BENCHMARK(BM_SuperposeFull);

void BM_ModelJointMixture(benchmark::State& state) {
  SplitMix64 rng(4);
  const auto& spec = CausalModelSpec::multisimultaneous();
  for (auto _ : state) {
    benchmark::DoNotOptimize(model_joint(spec, next_phases(rng)));
  }
}
BENCHMARK(BM_ModelJointMixture);

}  // namespace

BENCHMARK_MAIN();
