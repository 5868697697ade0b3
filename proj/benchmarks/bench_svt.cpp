#include <dqsvt/svt.hpp>

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace dqsvt;

SparseMatrix cyclic(Index n, Index s, Rng& rng) {
    std::vector<Triplet> entries;
    for (Index i = 0; i < n; ++i) {
        for (Index k = 0; k < s; ++k) {
            entries.push_back({i, (i + 1 + 7 * k) % n, Complex{uniform01(rng) - 0.5, uniform01(rng) - 0.5} / double(s)});
        }
    }
    return SparseMatrix(n, n, std::move(entries), s);
}

std::vector<Complex> unit(Index n, Rng& rng) {
    std::vector<Complex> v(n);
    double norm = 0;
    for (auto& x : v) {
        x = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
        norm += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(norm);
    return v;
}

// Args: s, d. One entry of P(sqrt(A^dagger A)) u without memoization.
void BM_SvtEntryPlain(benchmark::State& state) {
    const auto s = static_cast<Index>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    Rng rng(1);
    const auto a = cyclic(256, s, rng);
    const QueryVector u(unit(256, rng));
    const auto p = EvenPolynomial::monomial(std::vector<double>(d + 1, 1.0 / double(d + 1)));
    QueryStats stats;
    Index i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(svt_entry(a, u, p, i, &stats, false));
        i = (i + 37) % 256;
    }
    state.counters["queries_per_entry"] =
        benchmark::Counter(double(stats.matrix_queries) / double(state.iterations()));
}
BENCHMARK(BM_SvtEntryPlain)->ArgsProduct({{2, 3, 4}, {1, 2, 3}});

// Args: N, d. Whole-vector evaluation through the memoized Clenshaw path.
void BM_SvtEvaluatorChebyshev(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    Rng rng(2);
    const auto a = cyclic(n, 4, rng);
    const QueryVector u(unit(n, rng));
    const auto p = EvenPolynomial::chebyshev(std::vector<double>(d + 1, 1.0 / double(d + 1)));
    for (auto _ : state) {
        SvtEvaluator eval(a, u, p);
        for (Index i = 0; i < n; ++i) benchmark::DoNotOptimize(eval.entry(i));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SvtEvaluatorChebyshev)->ArgsProduct({{256, 1024}, {8, 64, 256}});

// Args: N, d. Full estimator run at eps = 0.1, failure probability 0.01.
void BM_EstimateBilinear(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    Rng rng(3);
    const auto a = cyclic(n, 4, rng);
    const QueryVector u(unit(n, rng));
    const auto v = exact_sampler(unit(n, rng));
    const auto p = EvenPolynomial::chebyshev(std::vector<double>(d + 1, 1.0 / double(d + 1)));
    const auto cfg = EstimatorConfig::make(0.1, 0.01, 0.0, 7);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_bilinear(a, u, v, p, cfg));
}
BENCHMARK(BM_EstimateBilinear)->ArgsProduct({{256, 4096}, {4, 32}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
