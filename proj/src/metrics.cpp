#include "risnoma/metrics.hpp"
#include "risnoma/errors.hpp"

#include <string>

namespace risnoma {

double spectral_efficiency(double r1, double r2) {
    return r1 + r2;
}

double energy_efficiency(double se, const EnergyModel &em) {
    const double denom = (1.0 + em.alpha) * em.p_r_w +
                         static_cast<double>(em.m_total) * em.p_re_w +
                         2.0 * em.p_u_w + em.p_static_w;
    if (!(denom > 0.0))
        throw DegenerateConfigError(
            "energy model consumes no power (denominator " +
            std::to_string(denom) + " W); set a transmit, element, or receiver term");
    return se / denom;
}

EnergyModel energy_model_from(const ScenarioConfig &cfg) {
    return EnergyModel{cfg.ee_terms.alpha,
                       cfg.rho_r * cfg.ee_terms.noise_floor_w,
                       cfg.ee_terms.p_re_w,
                       cfg.ee_terms.p_u_w,
                       cfg.ee_terms.p_static_w,
                       cfg.partition.m_total};
}

} // namespace risnoma
