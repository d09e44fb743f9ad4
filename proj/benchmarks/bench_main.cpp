// Microbenchmarks for the hot paths: sieving, single-alpha exponential sums,
// the phasor node sweep inside integral_I, and the meet-in-the-middle solver.

#include <benchmark/benchmark.h>

#include "dhlab/analysis.hpp"
#include "dhlab/arcs.hpp"
#include "dhlab/expsums.hpp"
#include "dhlab/kernel.hpp"
#include "dhlab/primes.hpp"
#include "dhlab/search.hpp"

using namespace dhlab;

namespace {

ProblemSpec bench_spec(double X, double eta, double delta) {
    ArcOverrides ov;
    ov.eta = eta;
    return ProblemSpec::make({DoubleDouble(1.0), dd_neg(dd_const::sqrt2),
                              dd_neg(dd_const::sqrt3), dd_neg(dd_const::sqrt5)},
                             dd_const::pi, arc_params(X, 0.05, delta, ov));
}

void BM_sieve_range(benchmark::State& state) {
    const std::uint64_t hi = state.range(0);
    for (auto _ : state) {
        auto table = sieve_range(2, hi);
        benchmark::DoNotOptimize(table.size());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hi));
}
BENCHMARK(BM_sieve_range)->Arg(1 << 20)->Arg(1 << 24);

void BM_prime_exp_sum(benchmark::State& state) {
    const double X = static_cast<double>(state.range(0));
    auto table = sieve_range(2, static_cast<std::uint64_t>(X));
    SumSpec spec{SumKind::Linear, true, X, 0.1};
    double alpha = 0.123456789;
    for (auto _ : state) {
        auto v = prime_exp_sum(spec, alpha, &table);
        benchmark::DoNotOptimize(v);
        alpha += 1e-6;
    }
}
BENCHMARK(BM_prime_exp_sum)->Arg(10000)->Arg(100000);

void BM_integral_nodes(benchmark::State& state) {
    ProblemSpec spec = bench_spec(500.0, 0.5, 0.1);
    const double len = static_cast<double>(state.range(0));
    std::uint64_t nodes = 0;
    for (auto _ : state) {
        auto r = integral_I(spec, Region::interval(0.0, len));
        benchmark::DoNotOptimize(r.value);
        nodes += r.nodes;
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(nodes));
}
BENCHMARK(BM_integral_nodes)->Arg(1)->Arg(8);

void BM_fejer_transform(benchmark::State& state) {
    for (auto _ : state) {
        double v = fejer_transform_quadrature(0.5, 0.25, 2e5);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_fejer_transform);

void BM_mitm_search(benchmark::State& state) {
    ProblemSpec spec = bench_spec(static_cast<double>(state.range(0)), 0.5, 0.1);
    for (auto _ : state) {
        auto recs = find_solutions(spec, SearchMode::window(0.5), 1u << 20);
        benchmark::DoNotOptimize(recs.size());
    }
}
BENCHMARK(BM_mitm_search)->Arg(10000)->Arg(100000);

void BM_weighted_solution_sum(benchmark::State& state) {
    ProblemSpec spec = bench_spec(static_cast<double>(state.range(0)), 0.5, 0.1);
    for (auto _ : state) {
        double v = weighted_solution_sum(spec);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_weighted_solution_sum)->Arg(2000)->Arg(20000);

} // namespace

BENCHMARK_MAIN();
