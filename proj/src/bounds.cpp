#include "risnoma/bounds.hpp"
#include "risnoma/errors.hpp"
#include "risnoma/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace risnoma {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kHypArgGuard = 300.0;

/// Small-gain route for E[ln(1 + C Y)], Y = A^2, A ~ Gamma(a+1, b):
/// the alternating moment series sum_j (-1)^(j+1) (C b^2)^j (a+1)_{2j} / j.
/// The series is asymptotic (gamma moments outgrow any power), so it is
/// truncated at the smallest term; the first omitted term bounds the error
/// and must come in below 1e-9 of the sum or the route reports failure.
double log_gain_moment_series(double a, double b, double c) {
    const double zb = c * b * b;
    double mom = 1.0;
    double sum = 0.0;
    double prev = 0.0;
    for (int j = 1; j <= 400; ++j) {
        mom *= zb * (a + 2.0 * j - 1.0) * (a + 2.0 * j);
        const double term = ((j & 1) ? 1.0 : -1.0) * mom / j;
        const double mag = std::fabs(term);
        if (j > 1 && mag >= prev) {
            if (mag <= 1e-9 * std::fabs(sum))
                return sum;
            throw ConvergenceError(
                "moment series for the rate integral stalls at relative size " +
                std::to_string(mag / std::fabs(sum)) +
                " (a=" + std::to_string(a) + ", scaled gain " + std::to_string(zb) +
                "): the configuration falls between the closed-form and "
                "small-gain regimes");
        }
        sum += term;
        if (mag <= 1e-13 * std::fabs(sum))
            return sum;
        prev = mag;
    }
    return sum;
}

/// E[ln(1 + C Y)] assembled from the Mellin-Barnes residues of the fitted
/// law: a digamma/log pair, one 2F3 series in the gain variable, and two
/// reflection terms carrying csc(pi a/2) and sec(pi a/2) factors. The
/// reflection prefactors are evaluated in log space because Gamma(a+1)
/// overflows for the element counts the sweeps reach.
double log_rate_closed_form(double a, double b, double c) {
    const double z = b * b * c;
    const double x = -0.25 / z;

    const std::array<double, 1> n1{1.0 + 0.5 * a};
    const std::array<double, 2> d1{1.5, 2.0 + 0.5 * a};
    const double f1 = sf::hyp_pfq(n1, d1, x);

    const std::array<double, 1> n2{0.5 * (a + 1.0)};
    const std::array<double, 2> d2{0.5, 0.5 * (a + 3.0)};
    const double f2 = sf::hyp_pfq(n2, d2, x);

    const std::array<double, 2> n3{1.0, 1.0};
    const std::array<double, 3> d3{2.0, 1.0 - 0.5 * a, 0.5 * (3.0 - a)};
    const double f3 = sf::hyp_pfq(n3, d3, x);

    const double lnz = std::log(z);
    const double lgamma_ap1 = sf::lgamma(a + 1.0);
    const double reduced = std::fmod(a, 4.0); // csc/sec have period 4 in a
    const double sin_half = std::sin(0.5 * std::numbers::pi * reduced);
    const double cos_half = std::cos(0.5 * std::numbers::pi * reduced);
    const double ln_pi = std::log(std::numbers::pi);

    double t_csc = 0.0;
    if (f1 != 0.0) {
        const double lt = ln_pi - std::log(std::fabs(sin_half)) - lgamma_ap1 -
                          std::log(a + 2.0) - 0.5 * (a + 2.0) * lnz +
                          std::log(std::fabs(f1));
        t_csc = std::copysign(std::exp(lt), sin_half * f1);
    }
    double t_sec = 0.0;
    if (f2 != 0.0) {
        const double lt = ln_pi - std::log(std::fabs(cos_half)) - lgamma_ap1 -
                          std::log(a + 1.0) - 0.5 * (a + 1.0) * lnz +
                          std::log(std::fabs(f2));
        t_sec = std::copysign(std::exp(lt), cos_half * f2);
    }
    const double t_series = f3 / (a * (a - 1.0) * z);

    return 2.0 * sf::digamma(a + 1.0) + lnz + t_csc + t_sec + t_series;
}

/// Route selection on the hypergeometric argument x = -1/(4 b^2 C): the
/// closed form holds everywhere but loses all precision past |x| ~ 300,
/// where the moment series takes over (it converges exactly when the gain
/// is that small, unless a is so large that neither regime applies).
double log_rate_integral(double a, double b, double c) {
    if (c == 0.0)
        return 0.0;
    const double z = b * b * c;
    if (0.25 / z > kHypArgGuard)
        return log_gain_moment_series(a, b, c);
    return log_rate_closed_form(a, b, c);
}

void require_valid_dist(const ApproxGainDist &dist) {
    if (!(dist.b > 0.0))
        throw DomainError("gain distribution needs b > 0, got " +
                          std::to_string(dist.b));
    if (!(dist.a > 1.0))
        throw DegenerateConfigError("gain distribution needs a > 1, got " +
                                    std::to_string(dist.a));
}

} // namespace

bool shape_needs_nudge(double a) {
    if (a < 1.0 + 1e-6)
        return true;
    const double nearest = std::round(a);
    return nearest >= 2.0 && std::fabs(a - nearest) < 1e-6;
}

double regularize_shape(double a) {
    if (a < 1.0 + 1e-6)
        return 1.0 + 1e-6;
    const double nearest = std::round(a);
    if (nearest >= 2.0 && std::fabs(a - nearest) < 1e-6)
        return a < nearest ? nearest - 1e-6 : nearest + 1e-6;
    return a;
}

double lower_rate_dr1(const ApproxGainDist &dist, double beta1_sq, double rho_r) {
    require_valid_dist(dist);
    if (!(beta1_sq > 0.0) || beta1_sq > 1.0)
        throw DomainError("beta1_sq must lie in (0, 1], got " +
                          std::to_string(beta1_sq));
    if (!(rho_r >= 0.0))
        throw DomainError("rho_r must be >= 0, got " + std::to_string(rho_r));
    const double a = regularize_shape(dist.a);
    return log_rate_integral(a, dist.b, beta1_sq * rho_r) / kLn2;
}

double lower_rate_dr2(const ApproxGainDist &dist, double c1, double c2,
                      double rho_r) {
    require_valid_dist(dist);
    if (!(c2 > 0.0) || c1 < c2)
        throw DomainError("lower_rate_dr2 needs c1 >= c2 > 0, got c1=" +
                          std::to_string(c1) + ", c2=" + std::to_string(c2));
    if (!(rho_r >= 0.0))
        throw DomainError("rho_r must be >= 0, got " + std::to_string(rho_r));
    if (c1 == c2 || rho_r == 0.0)
        return 0.0;
    const double a = regularize_shape(dist.a);
    return (log_rate_integral(a, dist.b, c1 * rho_r) -
            log_rate_integral(a, dist.b, c2 * rho_r)) /
           kLn2;
}

double upper_rate_dr1(const LinkSet &links, int m1, double beta1_sq, double rho_r) {
    if (!(beta1_sq > 0.0) || beta1_sq > 1.0)
        throw DomainError("beta1_sq must lie in (0, 1], got " +
                          std::to_string(beta1_sq));
    if (!(rho_r >= 0.0))
        throw DomainError("rho_r must be >= 0, got " + std::to_string(rho_r));
    return std::log1p(beta1_sq * rho_r * expected_gain_sq(links, m1, 1)) / kLn2;
}

double upper_rate_dr2(const LinkSet &links, int m2, const PowerSplit &power,
                      double rho_r) {
    if (!(rho_r >= 0.0))
        throw DomainError("rho_r must be >= 0, got " + std::to_string(rho_r));
    const double gain_mean = expected_gain_sq(links, m2, 2);
    const double xi_full = (power.beta1_sq + power.beta2_sq) * rho_r;
    const double xi_self = power.beta1_sq * rho_r;
    return (std::log1p(xi_full * gain_mean) - std::log1p(xi_self * gain_mean)) / kLn2;
}

RateBounds rate_bounds(const ScenarioConfig &cfg) {
    cfg.validate();
    const ApproxGainDist fit1 =
        fit_approx_dist(cfg.links.dt_ris, cfg.links.ris_dr1, cfg.partition.m1);
    const ApproxGainDist fit2 =
        fit_approx_dist(cfg.links.dt_ris, cfg.links.ris_dr2, cfg.partition.m2);

    RateBounds out;
    out.dr1_shape_nudged = shape_needs_nudge(fit1.a);
    out.dr2_shape_nudged = shape_needs_nudge(fit2.a);
    out.lower.r1 = lower_rate_dr1(fit1, cfg.power.beta1_sq, cfg.rho_r);
    out.lower.r2 = lower_rate_dr2(fit2, cfg.power.beta1_sq + cfg.power.beta2_sq,
                                  cfg.power.beta1_sq, cfg.rho_r);
    out.upper.r1 =
        upper_rate_dr1(cfg.links, cfg.partition.m1, cfg.power.beta1_sq, cfg.rho_r);
    out.upper.r2 =
        upper_rate_dr2(cfg.links, cfg.partition.m2, cfg.power, cfg.rho_r);
    return out;
}

} // namespace risnoma
