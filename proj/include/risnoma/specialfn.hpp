#ifndef RISNOMA_SPECIALFN_HPP
#define RISNOMA_SPECIALFN_HPP

#include <span>

namespace risnoma::sf {

/// Termination policy for series evaluation. A series is declared converged
/// only after three consecutive terms fall below rel_tol relative to the
/// running sum (alternating series can have a single accidentally small term).
struct SeriesControl {
    double rel_tol = 1e-12; ///< permitted range (0, 1e-6]
    int max_terms = 5000;   ///< at least 100

    /// Throws ParameterError if the fields are outside their permitted ranges.
    void validate() const;
};

/// Gamma function for x > 0.
/// Relative error <= 1e-13 on [1e-3, 170].
/// Throws DomainError for x <= 0, OverflowError for x > 171.
double gamma(double x);

/// Natural log of the gamma function for x > 0. Throws DomainError otherwise.
double lgamma(double x);

/// Digamma (psi) function for x > 0. Absolute error <= 1e-12.
/// Throws DomainError for x <= 0.
double digamma(double x);

/// Lower incomplete gamma function gamma(s, x) = integral of t^{s-1} e^{-t}
/// over [0, x]. Throws DomainError for s <= 0 or x < 0, OverflowError for
/// s > 171 where Gamma(s) (the x -> inf limit) exceeds double range.
double lower_incomplete_gamma(double s, double x);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s),
/// valid for arbitrarily large s. Throws DomainError for s <= 0 or x < 0.
double regularized_gamma_p(double s, double x);

/// Gauss hypergeometric 2F1(1, 1; 2; z) for z < 1, the series form of
/// -ln(1 - z)/z. For z < 0 the series is evaluated after an Euler-Pfaff
/// transform that maps the argument into (0, 1).
/// Throws DomainError for z >= 1, ConvergenceError if max_terms is exhausted.
double hyp2f1_1_1_2(double z, const SeriesControl &ctrl = {});

/// Generalized hypergeometric pFq by direct ascending series with
/// compensated summation. Supported orders: (p, q) in {(1, 2), (2, 3)}.
/// Arguments must satisfy z <= 0 (all uses here have negative real z, making
/// the series alternating) and |z| <= 300 (beyond that, term cancellation
/// destroys double precision; ConvergenceError is thrown instead of garbage).
/// Negative non-integer denominator parameters are allowed; the term index
/// where such a parameter crosses zero produces a late term spike, so
/// convergence may not be declared before the last crossing.
/// Throws ParameterError for unsupported orders or a denominator parameter
/// in {0, -1, -2, ...}; DomainError for z > 0; ConvergenceError as above.
double hyp_pfq(std::span<const double> numer, std::span<const double> denom,
               double z, const SeriesControl &ctrl = {});

} // namespace risnoma::sf

#endif
