#include <benchmark/benchmark.h>

#include "cpath/harness.hpp"

namespace {

using namespace cpath;

const std::vector<Path>& subjects(std::size_t max_nodes) {
    static std::vector<std::vector<Path>> cache(kMaxHarnessNodes + 1);
    if (cache[max_nodes].empty()) cache[max_nodes] = enumerate_paths(2, max_nodes);
    return cache[max_nodes];
}

void BM_termination_serial(benchmark::State& state) {
    const auto& s = subjects(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(termination_certificate_serial(s).rule_applications);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}

void BM_termination_omp(benchmark::State& state) {
    const auto& s = subjects(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(termination_certificate(s).rule_applications);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}

void BM_joinability_serial(benchmark::State& state) {
    const auto& s = subjects(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_joinability_serial(s).reducts_explored);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}

void BM_joinability_omp(benchmark::State& state) {
    const auto& s = subjects(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_joinability(s).reducts_explored);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}

}  // namespace

BENCHMARK(BM_termination_serial)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_termination_omp)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_joinability_serial)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_joinability_omp)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
