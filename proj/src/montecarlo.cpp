#include "risnoma/montecarlo.hpp"
#include "risnoma/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace risnoma {

namespace {

enum class Scheme { noma, oma };

/// One trial: a fresh stream keyed by the trial index, one draw per
/// receiver on its own sub-surface, rates under the requested scheme. The
/// draw order inside a trial is part of the determinism contract.
inline RatePair run_trial(const ScenarioConfig &cfg, std::uint64_t seed,
                          std::uint64_t stream_index, Scheme scheme) {
    rng::Stream stream(seed, stream_index);
    const ChannelDraw draw1 =
        draw_effective_channel(cfg.links, cfg.partition.m1, 1, stream);
    const ChannelDraw draw2 =
        draw_effective_channel(cfg.links, cfg.partition.m2, 2, stream);
    if (scheme == Scheme::noma)
        return instantaneous_rates(draw1, draw2, cfg);
    return oma_instantaneous_rates(draw1, draw2, cfg.power, cfg.rho_r);
}

/// Fills the per-trial buffers. Results land in index order regardless of
/// which thread produced them, so the later fixed-order reduction gives the
/// same bits for every worker count; the parallel and serial paths share
/// this body for the same reason.
void fill_trials(const ScenarioConfig &cfg, const McSettings &mc, Scheme scheme,
                 bool parallel, std::vector<double> &r1, std::vector<double> &r2) {
    const long long n = mc.n_trials;
    if (parallel) {
#pragma omp parallel for schedule(static) num_threads(mc.n_workers)
        for (long long i = 0; i < n; ++i) {
            const RatePair rates = run_trial(cfg, mc.seed, mc.stream_offset + i, scheme);
            r1[static_cast<std::size_t>(i)] = rates.r1;
            r2[static_cast<std::size_t>(i)] = rates.r2;
        }
    } else {
        for (long long i = 0; i < n; ++i) {
            const RatePair rates = run_trial(cfg, mc.seed, mc.stream_offset + i, scheme);
            r1[static_cast<std::size_t>(i)] = rates.r1;
            r2[static_cast<std::size_t>(i)] = rates.r2;
        }
    }
}

/// Two-pass mean and standard error in strict index order.
ErgodicEstimate reduce(const std::vector<double> &values) {
    const std::size_t n = values.size();
    double sum = 0.0;
    for (double v : values)
        sum += v;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(n - 1);
    return ErgodicEstimate{mean, std::sqrt(var / static_cast<double>(n)),
                           static_cast<long long>(n)};
}

ErgodicEstimate reduce_sum(const std::vector<double> &r1,
                           const std::vector<double> &r2) {
    const std::size_t n = r1.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sum += r1[i] + r2[i];
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (r1[i] + r2[i]) - mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(n - 1);
    return ErgodicEstimate{mean, std::sqrt(var / static_cast<double>(n)),
                           static_cast<long long>(n)};
}

ErgodicPair estimate(const ScenarioConfig &cfg, const McSettings &mc, Scheme scheme,
                     bool parallel) {
    cfg.validate();
    mc.validate();
    std::vector<double> r1(static_cast<std::size_t>(mc.n_trials));
    std::vector<double> r2(static_cast<std::size_t>(mc.n_trials));
    fill_trials(cfg, mc, scheme, parallel, r1, r2);
    return ErgodicPair{reduce(r1), reduce(r2), reduce_sum(r1, r2)};
}

} // namespace

void McSettings::validate() const {
    if (n_trials < 1000)
        throw ConfigError("mc.trials must be >= 1000, got " +
                          std::to_string(n_trials));
    if (n_workers < 1)
        throw ConfigError("mc.workers must be >= 1, got " +
                          std::to_string(n_workers));
}

ErgodicPair estimate_noma(const ScenarioConfig &cfg, const McSettings &mc) {
    return estimate(cfg, mc, Scheme::noma, true);
}

ErgodicPair estimate_oma(const ScenarioConfig &cfg, const McSettings &mc) {
    return estimate(cfg, mc, Scheme::oma, true);
}

ErgodicPair estimate_noma_serial(const ScenarioConfig &cfg, const McSettings &mc) {
    return estimate(cfg, mc, Scheme::noma, false);
}

ErgodicPair estimate_oma_serial(const ScenarioConfig &cfg, const McSettings &mc) {
    return estimate(cfg, mc, Scheme::oma, false);
}

} // namespace risnoma
