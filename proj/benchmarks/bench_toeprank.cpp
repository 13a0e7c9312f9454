#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "toeprank/field_matrix.hpp"
#include "toeprank/lift.hpp"
#include "toeprank/matching.hpp"
#include "toeprank/oracle.hpp"
#include "toeprank/pattern.hpp"

using namespace toeprank;

namespace {

std::vector<std::string> labels(const std::string& stem, int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

// seeded instance family shared by all benchmarks: n x n pattern, indices
// up to max_index, roughly 30% density
LaurentPattern bench_pattern(int n, int max_index, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Coefficient> coeffs;
    for (int idx = 0; idx <= max_index; ++idx) {
        std::vector<Entry> cells;
        for (Index r = 0; r < n; ++r) {
            for (Index c = 0; c < n; ++c) {
                if (rng() % 100 < 30) cells.push_back({r, c});
            }
        }
        if (!cells.empty()) coeffs.push_back({idx, SupportMatrix(n, n, cells)});
    }
    return LaurentPattern(labels("r", n), labels("c", n), coeffs);
}

void BM_TermRank(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const LaurentPattern h = bench_pattern(n, 3, 77);
    for (auto _ : state) {
        benchmark::DoNotOptimize(term_rank(h, k).value);
    }
}
BENCHMARK(BM_TermRank)->Args({8, 4})->Args({16, 8})->Args({32, 8});

void BM_DeltaCurve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const WeightedBipartiteGraph g = build_graph(bench_pattern(n, 3, 78));
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_curve(g).delta.size());
    }
}
BENCHMARK(BM_DeltaCurve)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_MaxMatching(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const WeightedBipartiteGraph g = build_graph(bench_pattern(n, 3, 79));
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_matching(g).matching.size());
    }
}
BENCHMARK(BM_MaxMatching)->Arg(16)->Arg(64);

void BM_WitnessRank(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const LaurentPattern h = bench_pattern(n, 3, 80);
    for (auto _ : state) {
        benchmark::DoNotOptimize(witness(h, k).rank);
    }
}
BENCHMARK(BM_WitnessRank)->Args({8, 4})->Args({16, 6});

void BM_ExhaustiveOracle(benchmark::State& state) {
    // capped so the sweep stays inside its parameter guard
    const LaurentPattern h = bench_pattern(3, 1, 81);
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_rank_exhaustive_gf2(h, 3));
    }
}
BENCHMARK(BM_ExhaustiveOracle);

} // namespace

BENCHMARK_MAIN();
