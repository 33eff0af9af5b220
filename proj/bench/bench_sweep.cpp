#include "tavis/sweep.hpp"

#include <benchmark/benchmark.h>

namespace {

tavis::ExperimentConfig bench_config(int frequencies) {
    tavis::ExperimentConfig c;
    c.frequencies.clear();
    for (int i = 0; i < frequencies; ++i) c.frequencies.push_back(3.5 + 0.05 * i);
    c.cycles = 20;
    c.steps_per_cycle = 5000;
    c.emit = tavis::EmitFlags{false, true, true, false};
    return c;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto c = bench_config(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tavis::sweep_serial(c));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto c = bench_config(static_cast<int>(state.range(0)));
    state.counters["threads"] = tavis::sweep_threads();
    for (auto _ : state) benchmark::DoNotOptimize(tavis::sweep_parallel(c));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
