#include <benchmark/benchmark.h>

#include "qcloner/cloner.hpp"
#include "qcloner/eavesdrop.hpp"
#include "qcloner/fock.hpp"
#include "qcloner/povm_optimizer.hpp"

using namespace qcloner;

static void BM_ReducedEvePair(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(reduced_state({0.2, 0.7}, Party::EvePair));
}
BENCHMARK(BM_ReducedEvePair);

static void BM_MutualInformation(benchmark::State& state)
{
    const auto ens = eve_ensemble(0.2, Basis::X);
    const auto m = optimal_povm(disturbance(0.2), Basis::X);
    for (auto _ : state)
        benchmark::DoNotOptimize(mutual_information(ens, m));
}
BENCHMARK(BM_MutualInformation);

static void BM_AscentOneRestart(benchmark::State& state)
{
    const auto ens = eve_ensemble(0.2, Basis::X);
    OptimizerConfig cfg;
    cfg.n_elements = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto rng = restart_stream(cfg.seed, 0);
        benchmark::DoNotOptimize(ascend(ens, random_povm(cfg.n_elements, 4, rng), cfg));
    }
}
BENCHMARK(BM_AscentOneRestart)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ClonerCircuit(benchmark::State& state)
{
    const auto topology = fock::enumerate_candidates().front();
    for (auto _ : state)
        benchmark::DoNotOptimize(fock::run_cloner_circuit(0.3, 0.5, topology));
}
BENCHMARK(BM_ClonerCircuit);

static void BM_Calibration(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(fock::calibrate_topology());
}
BENCHMARK(BM_Calibration)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
