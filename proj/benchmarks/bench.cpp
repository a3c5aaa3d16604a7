#include <benchmark/benchmark.h>

#include <complex>

#include "mexp/biorth.hpp"
#include "mexp/genfun.hpp"
#include "mexp/gram.hpp"
#include "mexp/lattice.hpp"

using namespace mexp;

namespace {

GenFunctionSpec integer_spec(int trunc) {
    GenFunctionSpec g;
    g.trunc = trunc;
    GenComponent c;
    c.shift = kPi;
    c.translate = 0.0;
    c.zeros.resize(std::size_t(2 * trunc + 1));
    for (long k = -trunc; k <= trunc; ++k) c.zeros[std::size_t(k + trunc)] = double(k);
    g.components.push_back(std::move(c));
    return g;
}

void BM_vp_eval(benchmark::State& state) {
    auto g = integer_spec(int(state.range(0)));
    const cplx z(0.37, 0.42);
    for (auto _ : state) benchmark::DoNotOptimize(vp_eval(g, z));
}

void BM_derivative_at_zero(benchmark::State& state) {
    auto g = integer_spec(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(derivative_at_zeros(g, 17.0));
}

void BM_gram_assembly(benchmark::State& state) {
    auto E = IntervalUnion::from_pairs({{0.0, 2.0}, {4.0, kTwoPi}});
    auto basis = multiband_basis(E, 300);
    auto order = nearest_origin_order(basis.freqs);
    FrequencySet sec;
    for (long i = 0; i < state.range(0); ++i)
        sec.points.push_back(basis.freqs.points[order[std::size_t(i)]]);
    for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(E, sec));
}

void BM_dual_system(benchmark::State& state) {
    auto E = IntervalUnion::from_pairs({{0.0, 2.0}, {4.0, kTwoPi}});
    auto basis = multiband_basis(E, 300);
    auto order = nearest_origin_order(basis.freqs);
    FrequencySet sec;
    for (long i = 0; i < state.range(0); ++i)
        sec.points.push_back(basis.freqs.points[order[std::size_t(i)]]);
    for (auto _ : state) benchmark::DoNotOptimize(dual_system(E, sec));
}

void BM_cyclic_level_sets(benchmark::State& state) {
    auto S = IntervalUnion::from_pairs({{0.3, 1.7}, {2.9, 4.4}, {5.0, 6.1}});
    for (auto _ : state) benchmark::DoNotOptimize(cyclic_level_sets(S, int(state.range(0))));
}

void BM_block_balanced(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(block_balanced_perturbation(0.75, 9, -int(state.range(0)),
                                                             int(state.range(0)) - 1));
}

} // namespace

BENCHMARK(BM_vp_eval)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(BM_derivative_at_zero)->Arg(1000)->Arg(10000);
BENCHMARK(BM_gram_assembly)->Arg(50)->Arg(200);
BENCHMARK(BM_dual_system)->Arg(50)->Arg(200);
BENCHMARK(BM_cyclic_level_sets)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(BM_block_balanced)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
