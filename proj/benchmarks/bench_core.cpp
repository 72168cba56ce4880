#include "dercat/exact_matrix.hpp"
#include "dercat/ext.hpp"
#include "dercat/sampling.hpp"
#include "dercat/window.hpp"

#include <benchmark/benchmark.h>

using namespace dercat;

static void BM_ReduceLineBundle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<std::size_t>(state.range(1));
    const LineBundleComplex o = LineBundleComplex::line_bundle(n, d);
    for (auto _ : state) benchmark::DoNotOptimize(reduce_to_window(o));
}
BENCHMARK(BM_ReduceLineBundle)->Args({1, 6})->Args({2, 4})->Args({2, -6})->Args({3, 3})->Unit(benchmark::kMillisecond);

static void BM_ExtRandomPair(benchmark::State& state) {
    Rng rng(7);
    RandomComplexOptions opts;
    opts.max_rank = static_cast<std::size_t>(state.range(1));
    const int n = static_cast<int>(state.range(0));
    const LineBundleComplex a = random_complex(n, rng, opts);
    const LineBundleComplex b = random_complex(n, rng, opts);
    for (auto _ : state) benchmark::DoNotOptimize(ext_table(a, b));
}
BENCHMARK(BM_ExtRandomPair)->Args({1, 2})->Args({2, 2})->Args({2, 4})->Args({3, 3})->Unit(benchmark::kMillisecond);

static void BM_ExactRank(benchmark::State& state) {
    const auto size = static_cast<std::size_t>(state.range(0));
    Rng rng(11);
    std::uniform_int_distribution<long> dist(-9, 9);
    ExactMatrix m(size, size);
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) m(r, c) = Scalar(dist(rng));
    }
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactRank)->RangeMultiplier(2)->Range(8, 64)->Complexity();
BENCHMARK_MAIN();
