#include <benchmark/benchmark.h>

#include <random>

#include "domp/separation.hpp"
#include "domp/strategy.hpp"

namespace {

using namespace domp;

/// Mixture of three random assignment points, so some rows are violated.
Point mixed_point(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const VarLayout layout(n);
    Point p;
    p.n = n;
    p.x.assign(static_cast<std::size_t>(layout.num_x()), 0.0);
    p.y.assign(n, 0.0);
    std::uniform_int_distribution<int> site(0, n - 1);
    for (int part = 0; part < 3; ++part) {
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (int k = 0; k < n; ++k) p.x[layout.x(order[k], site(rng), k)] += 1.0 / 3.0;
    }
    return p;
}

void BM_SeparateTelescoping(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = generate_instance(n, std::max(1, n / 4), 1);
    const RankStructure ranks(inst);
    const Point p = mixed_point(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(separate_soc(p, ranks));
    state.SetComplexityN(n);
}
BENCHMARK(BM_SeparateTelescoping)->RangeMultiplier(2)->Range(4, 64)->Complexity(benchmark::oNCubed);

void BM_SeparateNaive(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = generate_instance(n, std::max(1, n / 4), 1);
    const RankStructure ranks(inst);
    const Point p = mixed_point(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(separate_soc_naive(p, ranks));
    state.SetComplexityN(n);
}
BENCHMARK(BM_SeparateNaive)->RangeMultiplier(2)->Range(4, 16)->Complexity();

void BM_PoolScan(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = generate_instance(n, std::max(1, n / 4), 1);
    const RankStructure ranks(inst);
    const PoolSeparator pool(enumerate_soc_cuts(n), ranks);
    const Point p = mixed_point(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(pool.violated(p, 1.0, 500));
    state.counters["stored_coefficients"] = static_cast<double>(pool.stored_coefficients());
}
BENCHMARK(BM_PoolScan)->RangeMultiplier(2)->Range(4, 16);

void BM_CallbackScan(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = generate_instance(n, std::max(1, n / 4), 1);
    const CallbackSeparator callback{RankStructure(inst)};
    const Point p = mixed_point(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(callback.violated(p, 1.0, 500));
}
BENCHMARK(BM_CallbackScan)->RangeMultiplier(2)->Range(4, 16);

}  // namespace
