#pragma once

#include "risnoma/noma.hpp"

#include <cstdint>

namespace risnoma {

struct McSettings {
    long long n_trials = 100000;
    std::uint64_t seed = 1;
    int n_workers = 1;

    /// First stream index used by a run; trial i consumes stream
    /// (seed, stream_offset + i). Sweeps hand each grid point a disjoint
    /// range so points stay statistically independent under one seed.
    std::uint64_t stream_offset = 0;

    /// Throws ConfigError unless n_trials >= 1000 and n_workers >= 1.
    void validate() const;
};

struct ErgodicEstimate {
    double mean = 0.0;    // bits/s/Hz
    double std_err = 0.0; // sample stddev / sqrt(n_trials)
    long long n_trials = 0;
};

/// Per-receiver estimates plus the estimate of the per-trial rate sum. The
/// sum carries its own standard error, computed from the per-trial sums
/// themselves rather than by combining the per-receiver errors.
struct ErgodicPair {
    ErgodicEstimate dr1;
    ErgodicEstimate dr2;
    ErgodicEstimate sum;
};

/// Ergodic-rate estimate of the superposed scheme over n_trials independent
/// channel draws. Trial i always consumes stream (seed, i) into a per-trial
/// buffer that is reduced in index order, so the result is bit-identical for
/// any n_workers. Parallelized over trials with OpenMP.
ErgodicPair estimate_noma(const ScenarioConfig &cfg, const McSettings &mc);

/// Same contract for the time-division baseline.
ErgodicPair estimate_oma(const ScenarioConfig &cfg, const McSettings &mc);

/// Single-threaded reference implementations of the two estimators. They
/// must produce bit-identical results to the OpenMP versions; they exist to
/// test that claim and to serve as the benchmark baseline.
ErgodicPair estimate_noma_serial(const ScenarioConfig &cfg, const McSettings &mc);
ErgodicPair estimate_oma_serial(const ScenarioConfig &cfg, const McSettings &mc);

} // namespace risnoma
