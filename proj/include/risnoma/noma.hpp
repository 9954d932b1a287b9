#pragma once

#include "risnoma/channel.hpp"

namespace risnoma {

/// Power-domain split between the SIC-capable near receiver (DR1) and the far
/// receiver (DR2). Fractions must sum to 1 with beta2_sq > beta1_sq, otherwise
/// successive interference cancellation has no valid decoding order.
struct PowerSplit {
    double beta1_sq = 0.3;
    double beta2_sq = 0.7;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Element split of an M-element surface between the receivers.
struct RisPartition {
    int m_total = 64;
    double eta = 0.5;
    int m1 = 32;
    int m2 = 32;
};

/// m1 = floor(eta * m_total + 0.5), m2 = the rest. Throws
/// InvalidPartitionError when m_total < 2, eta is outside (0, 1), or the
/// rounding leaves either receiver without elements.
RisPartition partition_elements(int m_total, double eta);

/// Power-consumption side of the scenario. p_r_w is not stored here: the
/// transmit power is tied to the configured SNR via the noise floor,
/// p_r_w = rho_r * noise_floor_w.
struct EnergyTerms {
    double alpha = 1.2;        // amplifier slope
    double p_static_w = 0.0;   // transmitter static draw
    double p_re_w = 1e-4;      // per reflecting element
    double p_u_w = 1e-2;       // per receiver
    double noise_floor_w = 1e-3;

    void validate() const;
};

/// Everything one evaluation point needs: fading laws, element split, power
/// split, transmit SNR (linear), and the energy model terms.
struct ScenarioConfig {
    LinkSet links;
    RisPartition partition;
    PowerSplit power;
    double rho_r = 100.0;
    EnergyTerms ee_terms;

    void validate() const;
};

/// DR2 decodes its own signal with DR1's superposed power as interference:
/// g b2 rho / (g b1 rho + 1). Bounded above by beta2_sq / beta1_sq.
double sinr_dr2(double gain_sq_2, const PowerSplit &power, double rho_r);

/// DR1's SINR when first decoding DR2's signal; same rational form evaluated
/// at DR1's own gain.
double sinr_dr1_decode_dr2(double gain_sq_1, const PowerSplit &power, double rho_r);

/// DR1 after ideal cancellation of DR2's signal: beta1_sq * gain * rho, no
/// interference term.
double sinr_dr1(double gain_sq_1, const PowerSplit &power, double rho_r);

struct RatePair {
    double r1 = 0.0;
    double r2 = 0.0;
};

/// Instantaneous log2(1 + SINR) for both receivers under superposed
/// transmission with ideal SIC at DR1.
RatePair instantaneous_rates(const ChannelDraw &draw1, const ChannelDraw &draw2,
                             const ScenarioConfig &cfg);

/// One orthogonal-slot rate: 0.5 * log2(1 + power_fraction * gain_sq * rho_r).
double oma_rate(double gain_sq, double power_fraction, double rho_r);

/// Time-division baseline: each receiver gets half the slots, its own
/// sub-surface draw, and its power-split fraction of the transmit power, so
/// the frame spends the same radiated energy as the superposed scheme.
RatePair oma_instantaneous_rates(const ChannelDraw &draw1, const ChannelDraw &draw2,
                                 const PowerSplit &power, double rho_r);

} // namespace risnoma
