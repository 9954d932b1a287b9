#pragma once

#include <cstdint>

namespace risnoma::rng {

/// Counter-seeded xoshiro256++ stream.
///
/// Each (seed, stream_index) pair yields an independent, portable sequence:
/// the four state words come from splitmix64 applied to
/// seed + stream_index * 0x9E3779B97F4A7C15, so trial i of a Monte-Carlo run
/// can own stream i regardless of which worker executes it. All outputs are
/// fully defined by the two integers; nothing depends on the platform's
/// <random> implementation.
class Stream {
  public:
    explicit Stream(std::uint64_t seed, std::uint64_t stream_index = 0);

    std::uint64_t next_u64();

    /// Uniform double in (0, 1); zero is rejected so logs stay finite.
    double next_uniform();

    /// Standard normal via the Marsaglia polar method; the paired variate
    /// is cached, so draws come in deterministic order within one stream.
    double next_normal();

    /// Gamma(shape, scale) via Marsaglia-Tsang squeeze; shapes below 1 are
    /// boosted to shape+1 and corrected with a uniform power.
    double next_gamma(double shape, double scale);

  private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace risnoma::rng
