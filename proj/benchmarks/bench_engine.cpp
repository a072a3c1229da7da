#include <benchmark/benchmark.h>

#include "domp/methods.hpp"
#include "domp/simplex.hpp"

namespace {

using namespace domp;

template <MilpModel (*Build)(const Instance&, const RankStructure&)>
void BM_RootLp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = generate_instance(n, std::max(2, n / 3), 7);
    const MilpModel model = Build(inst, RankStructure(inst));
    std::int64_t iterations = 0;
    for (auto _ : state) {
        LpSolution s = solve_lp(model);
        iterations = s.iterations;
        benchmark::DoNotOptimize(s.objective);
    }
    state.counters["rows"] = model.num_rows();
    state.counters["pivots"] = static_cast<double>(iterations);
}
BENCHMARK_TEMPLATE(BM_RootLp, build_relax_model)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_RootLp, build_woc_model)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_RootLp, build_soc_model)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_RowGeneration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Strategy strategy = state.range(1) ? Strategy::Callback : Strategy::Pool;
    const Instance inst = generate_instance(n, std::max(2, n / 3), 11);
    SolveReport last;
    for (auto _ : state) last = solve_row_generation(inst, strategy, 1.0);
    state.counters["cuts"] = static_cast<double>(last.cuts);
    state.counters["nodes"] = static_cast<double>(last.nodes);
    state.SetLabel(to_string(strategy));
}
BENCHMARK(BM_RowGeneration)
    ->ArgsProduct({{8, 10, 12}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_BranchAndCut(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = generate_instance(n, std::max(2, n / 3), 11);
    SolveReport last;
    for (auto _ : state) last = solve_branch_and_cut(inst, Strategy::Callback);
    state.counters["cuts"] = static_cast<double>(last.cuts);
    state.counters["nodes"] = static_cast<double>(last.nodes);
}
BENCHMARK(BM_BranchAndCut)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

void BM_WarmStart(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = generate_instance(n, std::max(2, n / 4), 3);
    for (auto _ : state) benchmark::DoNotOptimize(warm_start_heuristic(inst, 50, 0.3, 1).value);
}
BENCHMARK(BM_WarmStart)->RangeMultiplier(2)->Range(10, 40)->Unit(benchmark::kMillisecond);

}  // namespace
