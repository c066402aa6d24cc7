#include <benchmark/benchmark.h>

#include "vecdep/vecdep.hpp"

using namespace vecdep;

namespace {

GroupedData clayton_data(std::size_t n, std::size_t p, std::size_t q) {
    Matrix m = sample_archimedean(ArchimedeanGenerator(Family::clayton, 2.0), p + q, n, 1);
    std::vector<Group> g(2);
    g[0].name = "X";
    g[1].name = "Y";
    for (std::size_t j = 0; j < p; ++j) g[0].columns.push_back(j);
    for (std::size_t j = 0; j < q; ++j) g[1].columns.push_back(p + j);
    return GroupedData(std::move(m), std::move(g));
}

void BM_PitTwoColumns(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix block = clayton_data(n, 2, 1).block("X");
    for (auto _ : state) benchmark::DoNotOptimize(pit_pseudo_observations(block));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PitTwoColumns)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_PitFourColumns(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix block = clayton_data(n, 4, 1).block("X");
    for (auto _ : state) benchmark::DoNotOptimize(pit_pseudo_observations(block));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PitFourColumns)->RangeMultiplier(2)->Range(1 << 9, 1 << 12)->Complexity();

void BM_KendallTau(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix m = clayton_data(n, 1, 1).values();
    const auto x = m.column(0), y = m.column(1);
    for (auto _ : state) benchmark::DoNotOptimize(tau(x, y));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallTau)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_KendallJoint(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const JointKendallModel model{ArchimedeanGenerator(Family::gumbel, 2.0), p, p};
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kendall_joint(model, t, 1.0 - t));
        t = t < 0.9 ? t + 0.01 : 0.1;
    }
}
BENCHMARK(BM_KendallJoint)->Arg(2)->Arg(10)->Arg(32);

void BM_SampleArchimedean(benchmark::State& state) {
    const ArchimedeanGenerator gen(Family::gumbel, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(sample_archimedean(gen, 4, 10000, 3));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_SampleArchimedean);

void BM_TauCaseOneVariance(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix m = clayton_data(n, 1, 1).values();
    const auto x = m.column(0), y = m.column(1);
    for (auto _ : state) benchmark::DoNotOptimize(tau_asymptotics_case1(x, y));
}
BENCHMARK(BM_TauCaseOneVariance)->Arg(1000)->Arg(100000);

void BM_PairwiseCorrelationVariance(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = clayton_data(n, 2, 2);
    const auto px = pair_series(d.block("X"), CollapseSpec::distance());
    const auto py = pair_series(d.block("Y"), CollapseSpec::distance());
    for (auto _ : state) benchmark::DoNotOptimize(sigma2_chi_case2(px, py));
}
BENCHMARK(BM_PairwiseCorrelationVariance)->Arg(250)->Arg(1000);

void BM_PairwiseTauVariance(benchmark::State& state) {
    const auto d = clayton_data(500, 2, 2);
    const auto px = pair_series(d.block("X"), CollapseSpec::distance());
    const auto py = pair_series(d.block("Y"), CollapseSpec::distance());
    const auto tuples = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tau_asymptotics_case2(px, py, {tuples, 1}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PairwiseTauVariance)->Arg(20000)->Arg(200000);

}  // namespace

BENCHMARK_MAIN();
