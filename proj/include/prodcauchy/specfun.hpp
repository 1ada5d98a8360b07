#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Scalar special-function kernel: complex log-gamma, Pochhammer symbols,
// generalized hypergeometric series, a generic Mellin-Barnes contour
// evaluator, and the Bessel J/K pair used for the n=2 cross-checks.

namespace prodcauchy::specfun {

using Complex = std::complex<double>;

/// Thrown when an iterative evaluation hits its term/interval budget before
/// reaching the requested tolerance. Carries the best estimate so far.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, Complex partial)
        : std::runtime_error(what), partial_(partial) {}
    Complex partial() const { return partial_; }

private:
    Complex partial_;
};

/// Principal-branch log Gamma(z): continuous, real on the positive real axis.
/// Relative accuracy of exp(log_gamma(z)) is ~1e-14 for |z| <= 1e6.
/// Throws std::domain_error at the poles (non-positive integers).
Complex log_gamma(Complex z);

/// log Gamma(x) for x > 0 (thin wrapper over std::lgamma with pole checks).
double log_gamma_real(double x);

/// Pochhammer symbol (a)_k = a(a+1)...(a+k-1), (a)_0 = 1.
double pochhammer(double a, int k);

/// Generalized hypergeometric series pFq(upper; lower; z).
///
/// Terminates exactly when some upper parameter is a non-positive integer -m
/// (m+1 terms). Otherwise requires p <= q, or p == q+1 with |z| < 1, and sums
/// until two consecutive terms fall below tol * |partial sum|.
/// Throws std::domain_error for non-convergent parameter regimes and
/// ConvergenceError (carrying the partial sum) when max_terms is exhausted.
Complex hypergeom_pFq(std::span<const double> upper, std::span<const double> lower,
                      Complex z, double tol = 1e-15, int max_terms = 10000);

/// Symbolic Mellin-Barnes integrand: the function of u > 0 represented is
///
///   exp(log_prefactor) * u^power_shift
///     * (1/2*pi*i) Int prod_j Gamma(ascending_j + s)
///                      prod_j Gamma(descending_j - s) u^{-s} ds
///
/// over a vertical contour inside the strip
/// max_j(-ascending_j) < Re s < min_j(descending_j). `descending` may be
/// empty (G^{n,0}-type integrands), in which case the strip is a half-line.
struct GammaProductSpec {
    std::vector<double> ascending;
    std::vector<double> descending;
    double log_prefactor = 0.0;
    double power_shift = 0.0;

    double lower_abscissa() const;  // max_j(-ascending_j)
    double upper_abscissa() const;  // min_j(descending_j), +inf if empty
    void validate() const;          // throws std::domain_error on bad specs
};

/// Truncated vertical contour Re s = abscissa, Im s in [-half_extent, half_extent],
/// discretized with node_count equispaced quadrature nodes.
struct ContourSpec {
    double abscissa = 1.0;
    double half_extent = 40.0;
    int node_count = 2048;
};

/// Contour tuned for (spec, u): abscissa at the minimizer of the real-axis
/// log-integrand (kept strictly inside the admissible strip) and half_extent
/// extended until the integrand has rolled off by ~1e-20 from its peak.
ContourSpec default_contour(const GammaProductSpec& spec, double u, int node_count = 2048);

struct MellinBarnesResult {
    double value = 0.0;       // real part of the contour integral
    double imag_ratio = 0.0;  // |imag| / |real| of the raw integral (diagnostic)
    bool accuracy_warning = false;  // imag_ratio > 1e-6
};

/// Evaluates the function represented by `spec` at u > 0 on the given contour.
/// Node contributions are accumulated in log-magnitude-shifted form, so Gamma
/// products that overflow double precision by hundreds of orders are fine.
MellinBarnesResult mellin_barnes(const GammaProductSpec& spec, double u,
                                 const ContourSpec& contour);

/// Convenience: evaluate on the default contour for (spec, u).
MellinBarnesResult mellin_barnes(const GammaProductSpec& spec, double u);

/// Bessel J_v(x) by the ascending series (v >= 0, |x| <= 20).
double bessel_j(double order, double x);

/// Modified Bessel K_v(x) (v >= 0, x > 0) through the G^{2,0}_{0,2}
/// Mellin-Barnes representation.
double bessel_k(double order, double x);

}  // namespace prodcauchy::specfun
