#pragma once

#include "risnoma/rng.hpp"

namespace risnoma {

/// Nakagami-m amplitude law: X >= 0 with X^2 ~ Gamma(shape m, scale omega/m),
/// so omega = E[X^2] and m = 1 is Rayleigh.
struct NakagamiParams {
    double m = 1.0;
    double omega = 1.0;

    /// Throws DomainError unless m >= 0.5 and omega > 0.
    void validate() const;
};

/// The five fading links of one transmitter / surface / two-receiver layout:
/// transmitter to surface, surface to each receiver, and the two direct paths.
struct LinkSet {
    NakagamiParams dt_ris{5.0, 1.0};
    NakagamiParams ris_dr1{5.0, 1.0};
    NakagamiParams ris_dr2{5.0, 1.0};
    NakagamiParams direct_dr1{2.0, 1.0};
    NakagamiParams direct_dr2{2.0, 1.0};

    void validate() const;
};

/// Two-parameter fit of the phase-aligned cascade sum S = sum_i |g0_i||gl_i|:
/// S is approximated by A ~ Gamma(shape a+1, scale b), so the effective power
/// gain Y = S^2 has density y^((a-1)/2) exp(-sqrt(y)/b) / (2 b^(a+1) Gamma(a+1)).
struct ApproxGainDist {
    double a = 0.0;
    double b = 0.0;

    /// Density peak location, b^2 (a-1)^2 for a > 1; 0 when the density has
    /// no interior peak (a <= 1).
    double mode() const;
};

/// E[|X|] = Gamma(m + 1/2) / Gamma(m) * sqrt(omega / m).
double nakagami_abs_mean(const NakagamiParams &params);

/// One amplitude draw; the square of the result averages to omega.
double sample_nakagami(const NakagamiParams &params, rng::Stream &stream);

/// Moment-matched (a, b) for the cascade sum over n_elements terms:
/// a + 1 = E[S]^2 / Var[S] and b = Var[S] / E[S], with
/// E[S] = N mu0 mul and Var[S] = N (omega0 omegal - mu0^2 mul^2).
/// Throws DomainError if n_elements < 1 and DegenerateConfigError when the
/// matched amplitude-law shape a+1 is <= 1, i.e. the two-moment fit leaves
/// the Gamma family it was built for. The closed-form rate bounds impose the
/// stricter a > 1 themselves.
ApproxGainDist fit_approx_dist(const NakagamiParams &dt_ris,
                               const NakagamiParams &ris_dr, int n_elements);

/// Density of the effective power gain under the fitted law. DomainError y <= 0.
double approx_pdf(const ApproxGainDist &dist, double y);

/// P(a+1, sqrt(y)/b), the exact integral of approx_pdf. DomainError y <= 0.
double approx_cdf(const ApproxGainDist &dist, double y);

/// One channel realization for one receiver.
struct ChannelDraw {
    double h_abs = 0.0;       // direct-link amplitude
    double cascade_sum = 0.0; // phase-aligned sum over the sub-surface
    double gain_sq = 0.0;     // (h_abs + cascade_sum)^2
};

/// Draws the direct amplitude and n_elements cascade products for the given
/// receiver (which_user is 1 or 2, anything else is a DomainError);
/// n_elements = 0 models the surface-free link.
ChannelDraw draw_effective_channel(const LinkSet &links, int n_elements,
                                   int which_user, rng::Stream &stream);

/// Exact mean of gain_sq by binomial expansion:
/// omega_h + N omega0 omegal + N(N-1)(mu0 mul)^2 + 2 N mu_h mu0 mul.
double expected_gain_sq(const LinkSet &links, int n_elements, int which_user);

} // namespace risnoma
