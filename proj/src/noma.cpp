#include "risnoma/noma.hpp"
#include "risnoma/errors.hpp"

#include <cmath>
#include <string>

namespace risnoma {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;

double rate_from_sinr(double sinr) {
    return std::log1p(sinr) * kInvLn2;
}

} // namespace

void PowerSplit::validate() const {
    if (!(beta1_sq > 0.0) || !(beta1_sq < 1.0))
        throw ConfigError("power.beta1_sq must lie in (0, 1), got " +
                          std::to_string(beta1_sq));
    if (!(beta2_sq > 0.0) || !(beta2_sq < 1.0))
        throw ConfigError("power.beta2_sq must lie in (0, 1), got " +
                          std::to_string(beta2_sq));
    if (std::fabs(beta1_sq + beta2_sq - 1.0) > 1e-12)
        throw ConfigError("power fractions must sum to 1, got beta1_sq + beta2_sq = " +
                          std::to_string(beta1_sq + beta2_sq));
    if (!(beta2_sq > beta1_sq))
        throw ConfigError("power.beta2_sq must exceed power.beta1_sq (the far "
                          "receiver is decoded first and needs the larger share)");
}

RisPartition partition_elements(int m_total, double eta) {
    if (m_total < 2)
        throw InvalidPartitionError("ris.m_total must be >= 2, got " +
                                    std::to_string(m_total));
    if (!(eta > 0.0) || !(eta < 1.0))
        throw InvalidPartitionError("ris.eta must lie strictly inside (0, 1), got " +
                                    std::to_string(eta));
    const int m1 = static_cast<int>(std::floor(eta * m_total + 0.5));
    const int m2 = m_total - m1;
    if (m1 < 1 || m2 < 1)
        throw InvalidPartitionError(
            "element split (" + std::to_string(m1) + ", " + std::to_string(m2) +
            ") leaves one receiver without elements (m_total=" +
            std::to_string(m_total) + ", eta=" + std::to_string(eta) + ")");
    return RisPartition{m_total, eta, m1, m2};
}

void EnergyTerms::validate() const {
    if (!(alpha >= 0.0))
        throw ConfigError("energy.alpha must be >= 0, got " + std::to_string(alpha));
    if (!(p_static_w >= 0.0))
        throw ConfigError("energy.p_static_w must be >= 0, got " +
                          std::to_string(p_static_w));
    if (!(p_re_w >= 0.0))
        throw ConfigError("energy.p_re_w must be >= 0, got " + std::to_string(p_re_w));
    if (!(p_u_w >= 0.0))
        throw ConfigError("energy.p_u_w must be >= 0, got " + std::to_string(p_u_w));
    if (!(noise_floor_w > 0.0))
        throw ConfigError("energy.noise_floor_w must be > 0, got " +
                          std::to_string(noise_floor_w));
}

void ScenarioConfig::validate() const {
    links.validate();
    power.validate();
    ee_terms.validate();
    if (!(rho_r > 0.0))
        throw ConfigError("transmit SNR must be > 0, got rho_r=" +
                          std::to_string(rho_r));
    if (partition.m1 < 1 || partition.m2 < 1 ||
        partition.m1 + partition.m2 != partition.m_total)
        throw InvalidPartitionError(
            "inconsistent element split: m1=" + std::to_string(partition.m1) +
            ", m2=" + std::to_string(partition.m2) + ", m_total=" +
            std::to_string(partition.m_total));
}

double sinr_dr2(double gain_sq_2, const PowerSplit &power, double rho_r) {
    if (!(gain_sq_2 >= 0.0))
        throw DomainError("gain_sq must be >= 0, got " + std::to_string(gain_sq_2));
    const double signal = gain_sq_2 * power.beta2_sq * rho_r;
    return signal / (gain_sq_2 * power.beta1_sq * rho_r + 1.0);
}

double sinr_dr1_decode_dr2(double gain_sq_1, const PowerSplit &power, double rho_r) {
    return sinr_dr2(gain_sq_1, power, rho_r);
}

double sinr_dr1(double gain_sq_1, const PowerSplit &power, double rho_r) {
    if (!(gain_sq_1 >= 0.0))
        throw DomainError("gain_sq must be >= 0, got " + std::to_string(gain_sq_1));
    return power.beta1_sq * gain_sq_1 * rho_r;
}

RatePair instantaneous_rates(const ChannelDraw &draw1, const ChannelDraw &draw2,
                             const ScenarioConfig &cfg) {
    return RatePair{rate_from_sinr(sinr_dr1(draw1.gain_sq, cfg.power, cfg.rho_r)),
                    rate_from_sinr(sinr_dr2(draw2.gain_sq, cfg.power, cfg.rho_r))};
}

double oma_rate(double gain_sq, double power_fraction, double rho_r) {
    if (!(gain_sq >= 0.0))
        throw DomainError("gain_sq must be >= 0, got " + std::to_string(gain_sq));
    return 0.5 * rate_from_sinr(power_fraction * gain_sq * rho_r);
}

RatePair oma_instantaneous_rates(const ChannelDraw &draw1, const ChannelDraw &draw2,
                                 const PowerSplit &power, double rho_r) {
    return RatePair{oma_rate(draw1.gain_sq, power.beta1_sq, rho_r),
                    oma_rate(draw2.gain_sq, power.beta2_sq, rho_r)};
}

} // namespace risnoma
