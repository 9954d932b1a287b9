#pragma once

#include "risnoma/noma.hpp"

namespace risnoma {

/// Consumed-power breakdown for one scenario point.
struct EnergyModel {
    double alpha = 1.2;
    double p_r_w = 0.1;
    double p_re_w = 1e-4;
    double p_u_w = 1e-2;
    double p_static_w = 0.0;
    int m_total = 64;
};

/// Sum rate of the two receivers.
double spectral_efficiency(double r1, double r2);

/// se / ((1 + alpha) p_r + m_total p_re + 2 p_u + p_static), bits/Joule/Hz.
/// Throws DegenerateConfigError when the denominator is not positive.
double energy_efficiency(double se, const EnergyModel &em);

/// Binds the scenario's SNR to transmit power through the noise floor:
/// p_r_w = rho_r * noise_floor_w, so rho_r = 1 means 1 mW at the default floor.
EnergyModel energy_model_from(const ScenarioConfig &cfg);

} // namespace risnoma
