#pragma once

#include "risnoma/channel.hpp"
#include "risnoma/noma.hpp"

namespace risnoma {

/// Closed-form sandwich for one scenario, in bits/s/Hz. The lower pair comes
/// from integrating the rate against the fitted cascade-only gain law; the
/// upper pair moves the expectation inside the log (Jensen) using the exact
/// gain mean including the direct link.
struct RateBounds {
    RatePair lower;
    RatePair upper;
    bool dr1_shape_nudged = false;
    bool dr2_shape_nudged = false;
};

/// True when the fitted shape sits within 1e-6 of a pole of the closed form
/// (any integer >= 2, where csc(a pi/2) or sec(a pi/2) blows up, or a <= 1+1e-6
/// near the Gamma(a-1) edge).
bool shape_needs_nudge(double a);

/// Returns a moved 1e-6 off the nearest pole (upward at the a = 1 edge). The
/// singularities are removable, so the displaced value differs from the limit
/// by under 1e-4 bits/s/Hz in any rate built from it.
double regularize_shape(double a);

/// E[log2(1 + beta1_sq rho Y)] under the fitted law, evaluated in closed form
/// from digamma plus three hypergeometric terms, with a Maclaurin moment
/// expansion taking over where the hypergeometric argument passes the |z| <= 300
/// guard (very small beta1_sq * rho). Throws ConvergenceError if neither route
/// can reach tolerance, which arises only far outside the preset grids.
double lower_rate_dr1(const ApproxGainDist &dist, double beta1_sq, double rho_r);

/// E[log2((1 + c1 rho Y) / (1 + c2 rho Y))] as the difference of two
/// lower_rate_dr1-type integrals. Requires c1 >= c2 > 0; returns exactly 0
/// when c1 == c2. Capped by log2(c1/c2) as rho grows.
double lower_rate_dr2(const ApproxGainDist &dist, double c1, double c2,
                      double rho_r);

/// log2(1 + beta1_sq * rho * E[gain_sq]) for receiver 1's sub-surface.
double upper_rate_dr1(const LinkSet &links, int m1, double beta1_sq, double rho_r);

/// log2(1 + rho E) - log2(1 + beta1_sq rho E) with E = E[gain_sq] for
/// receiver 2's sub-surface; always below log2(1/beta1_sq).
double upper_rate_dr2(const LinkSet &links, int m2, const PowerSplit &power,
                      double rho_r);

/// Fits both sub-surfaces, nudges shapes off poles when needed (flagged in
/// the result), and assembles all four bounds.
RateBounds rate_bounds(const ScenarioConfig &cfg);

} // namespace risnoma
