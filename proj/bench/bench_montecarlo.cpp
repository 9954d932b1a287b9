// Benchmark comparing the OpenMP Monte-Carlo kernels with the serial
// reference implementation. Built against Google Benchmark when available;
// otherwise a plain chrono harness (SIMPLE_BENCH_HARNESS) that also checks
// the two paths agree bit for bit.

#include "risnoma/montecarlo.hpp"
#include "risnoma/noma.hpp"

#include <algorithm>
#include <omp.h>

namespace {

risnoma::ScenarioConfig bench_config() {
    risnoma::ScenarioConfig cfg;
    cfg.partition = risnoma::partition_elements(64, 0.5);
    return cfg;
}

risnoma::McSettings bench_settings(long long trials, int workers) {
    risnoma::McSettings mc;
    mc.n_trials = trials;
    mc.seed = 99;
    mc.n_workers = workers;
    return mc;
}

} // namespace

#ifdef SIMPLE_BENCH_HARNESS

#include <chrono>
#include <cstdio>

namespace {

template <typename Fn>
double ns_per_trial(Fn &&fn, long long trials, risnoma::ErgodicPair &out) {
    using clock = std::chrono::steady_clock;
    // warm-up run, then best of three timed runs
    out = fn();
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = clock::now();
        out = fn();
        const double ns =
            std::chrono::duration<double, std::nano>(clock::now() - t0).count();
        best = std::min(best, ns / static_cast<double>(trials));
    }
    return best;
}

bool same_bits(const risnoma::ErgodicEstimate &x,
               const risnoma::ErgodicEstimate &y) {
    return x.mean == y.mean && x.std_err == y.std_err &&
           x.n_trials == y.n_trials;
}

} // namespace

int main() {
    const long long trials = 20000;
    const int workers = std::max(1, omp_get_max_threads());
    const risnoma::ScenarioConfig cfg = bench_config();
    const risnoma::McSettings mc = bench_settings(trials, workers);

    risnoma::ErgodicPair parallel, serial;
    const double ns_par = ns_per_trial(
        [&] { return risnoma::estimate_noma(cfg, mc); }, trials, parallel);
    const double ns_ser = ns_per_trial(
        [&] { return risnoma::estimate_noma_serial(cfg, mc); }, trials, serial);

    std::printf("trials per run     : %lld\n", trials);
    std::printf("worker threads     : %d\n", workers);
    std::printf("parallel kernel    : %.1f ns/trial\n", ns_par);
    std::printf("serial reference   : %.1f ns/trial\n", ns_ser);
    std::printf("speedup            : %.2fx\n", ns_ser / ns_par);

    const bool identical = same_bits(parallel.dr1, serial.dr1) &&
                           same_bits(parallel.dr2, serial.dr2) &&
                           same_bits(parallel.sum, serial.sum);
    std::printf("results bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}

#else // Google Benchmark harness

#include <benchmark/benchmark.h>

static void BM_EstimateNomaParallel(benchmark::State &state) {
    const risnoma::ScenarioConfig cfg = bench_config();
    const risnoma::McSettings mc = bench_settings(
        state.range(0), std::max(1, omp_get_max_threads()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(risnoma::estimate_noma(cfg, mc));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateNomaParallel)->Arg(20000);

static void BM_EstimateNomaSerial(benchmark::State &state) {
    const risnoma::ScenarioConfig cfg = bench_config();
    const risnoma::McSettings mc = bench_settings(state.range(0), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(risnoma::estimate_noma_serial(cfg, mc));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateNomaSerial)->Arg(20000);

BENCHMARK_MAIN();

#endif
