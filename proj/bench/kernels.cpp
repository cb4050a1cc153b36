#include <map>

#include <benchmark/benchmark.h>

#include "dodeca/analysis.hpp"
#include "dodeca/engine.hpp"

using namespace dodeca;

namespace {

const RuleSet& rules() {
    static const RuleSet rs = load_rule_set_file(DODECA_DEFAULT_RULES_FILE);
    return rs;
}

const Patch& patch(int generation) {
    static std::map<int, Patch> cache;
    auto it = cache.find(generation);
    if (it == cache.end()) it = cache.emplace(generation, iterate(SeedKind::Rosette, generation, rules(), {2, 2})).first;
    return it->second;
}

void substitute_parallel(benchmark::State& state) {
    const Patch& p = patch(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(substitute_once(p, rules(), {2, 2}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.tiles.size()));
}

void substitute_serial(benchmark::State& state) {
    const Patch& p = patch(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(substitute_once_serial(p, rules(), {2, 2}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.tiles.size()));
}

void overlap_binned(benchmark::State& state) {
    const Patch& p = patch(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_no_overlap(p));
}

void overlap_all_pairs(benchmark::State& state) {
    const Patch& p = patch(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_no_overlap_serial(p));
}

} // namespace

BENCHMARK(substitute_parallel)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(substitute_serial)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(overlap_binned)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(overlap_all_pairs)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
