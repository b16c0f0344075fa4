#include <benchmark/benchmark.h>

#include "hmrac/simulation.hpp"

using namespace hmrac;

static void BM_BenchmarkRun(benchmark::State& state) {
  SimConfig cfg;
  cfg.variant = static_cast<Variant>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg));
  state.SetLabel(std::string(to_string(cfg.variant)));
}
BENCHMARK(BM_BenchmarkRun)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
