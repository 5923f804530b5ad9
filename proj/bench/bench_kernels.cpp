// Serial reference vs OpenMP kernels on a synthetic workload shaped like the
// studied logs (many sessions, run-heavy event streams).

#include <benchmark/benchmark.h>

#include "taxolex/catalog.hpp"
#include "taxolex/matcher.hpp"
#include "taxolex/miner.hpp"
#include "taxolex/transforms.hpp"

using namespace taxolex;

namespace {

// splitmix64, enough for workload shaping.
struct Rng {
    std::uint64_t state = 0x243f6a8885a308d3ull;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::int64_t below(std::int64_t n) {
        return static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(n));
    }
};

SequenceSet make_workload(std::int64_t sessions, std::int64_t events) {
    const char* alphabet[] = {"aggregate", "arrange", "encode", "navigate",
                              "filter",    "select",  "derive", "annotate"};
    Rng rng;
    SequenceSet seqs;
    seqs.dataset = "bench";
    seqs.taxonomy = "brehmermunzner2013";
    for (std::int64_t s = 0; s < sessions; ++s) {
        TerminalSequence seq;
        seq.session_id = "s" + std::to_string(s);
        std::int64_t i = 0;
        while (i < events) {
            const char* t = alphabet[rng.below(8)];
            std::int64_t run = 1 + rng.below(6);
            for (std::int64_t k = 0; k < run && i < events; ++k, ++i) {
                SequenceItem item;
                item.terminal = t;
                item.source_ordinal = i;
                seq.items.push_back(std::move(item));
            }
        }
        seqs.sequences.push_back(std::move(seq));
    }
    return seqs;
}

const SequenceSet& workload() {
    static SequenceSet seqs = make_workload(64, 12000);
    return seqs;
}

const CompiledRuleSet& rules() {
    static CompiledRuleSet crs = [] {
        Catalog catalog;
        RuleSet rs = catalog.ruleset("brehmermunzner2013", "shneiderman1996");
        return compile_ruleset(rs, catalog.taxonomy("brehmermunzner2013"));
    }();
    return crs;
}

void bm_transform(benchmark::State& state, Exec exec) {
    const SequenceSet& seqs = workload();
    for (auto _ : state) {
        SequenceSet out = transform_all(seqs, Approach::Numeric, exec);
        benchmark::DoNotOptimize(out.sequences.data());
    }
}

void bm_match(benchmark::State& state, Exec exec) {
    const SequenceSet& seqs = workload();
    const CompiledRuleSet& crs = rules();
    for (auto _ : state) {
        auto reports = match_dataset(seqs, crs, Approach::Collapse, exec);
        benchmark::DoNotOptimize(reports.data());
    }
}

void bm_mine(benchmark::State& state, Exec exec) {
    static SequenceSet seqs = make_workload(24, 900);
    for (auto _ : state) {
        MiningResult result = common_subsequences(seqs, Approach::Plus, 2, 0.5, exec);
        benchmark::DoNotOptimize(result.patterns.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(bm_transform, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_transform, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_match, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_match, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_mine, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_mine, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
