#pragma once

#include <complex>
#include <functional>
#include <span>

#include "prodcauchy/ensemble.hpp"
#include "prodcauchy/weight.hpp"

// Finite-N determinantal kernel and k-point correlations, the macroscopic
// density, the bulk (Ginibre) and origin scaling limits, and the n=2 Bessel
// specialization.

namespace prodcauchy::kernel {

using Complex = std::complex<double>;

enum class WeightRoute { automatic, closed, meijer, quadrature };

/// mantissa * exp(log_scale); keeps terminating sums whose terms span
/// hundreds of orders of magnitude inside double range.
struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    double log_scale = 0.0;

    Complex value() const { return mantissa * std::exp(log_scale); }
};

/// The kernel series f(w) = sum_{k<N} prod_i Gamma(nu_i+N+1) /
/// (Gamma(N-k) Gamma(nu_i+k+1)) * w^k, accumulated with a log-scale shift
/// anchored at the largest term.
ScaledComplex kernel_series(const EnsembleConfig& cfg, Complex w);

struct KernelValue {
    Complex value{0.0, 0.0};
    double weight_i = 0.0;   // omega(z_i)
    double weight_j = 0.0;   // omega(z_j)
    double stabilizer = 0.0; // log-scale shift used in the series
};

/// Squared norms h_k of the orthogonal monomials, 0 <= k <= N-1.
/// Numerically identical to weight_moment(k).
double norm_h(int k, const EnsembleConfig& cfg);

/// Finite-N kernel K(z_i, z_j) = sqrt(omega(z_i) omega(z_j)) f(z_i conj(z_j)) / pi^n.
/// `route` selects the weight evaluator (automatic: closed form for n=1,
/// Mellin-Barnes otherwise).
KernelValue kernel_finite(Complex z_i, Complex z_j, const EnsembleConfig& cfg,
                          WeightRoute route = WeightRoute::automatic);

/// One-point density evaluator rho(z) = K(z,z)/N, with a numerically computed
/// global normalization constant applied so the density integrates to 1.
/// The constant (an audit of the kernel prefactor bookkeeping) is reported.
class FiniteDensity {
public:
    explicit FiniteDensity(EnsembleConfig cfg, WeightRoute route = WeightRoute::automatic);

    double operator()(Complex z) const;
    /// Normalization correction c such that rho = c * K(z,z)/N; c == 1 means
    /// the closed-form prefactors already integrate to 1.
    double normalization() const { return c_norm_; }
    /// Raw mass 2*pi*Int r K(r,r)/N dr found by the audit integral.
    double raw_mass() const { return raw_mass_; }
    const EnsembleConfig& config() const { return cfg_; }

private:
    EnsembleConfig cfg_;
    WeightRoute route_;
    double c_norm_ = 1.0;
    double raw_mass_ = 1.0;
};

/// One-off convenience wrapper around FiniteDensity (recomputes the
/// normalization audit on every call; use the class for grids).
double density_finite(Complex z, const EnsembleConfig& cfg);

/// Macroscopic density (1/(pi n)) |z|^{(2-2n)/n} (1+|z|^{2/n})^{-2}.
/// z = 0 is a domain error for n >= 2 (integrable singularity).
double density_macroscopic(Complex z, int n);

/// Mellin transform of the macroscopic density with charges lambda_i >= 0:
/// Int_0^1 prod_i ((t+lambda_i)/(1-t))^s dt, defined for |s| < 1/n.
double macroscopic_mellin(double s, std::span<const double> lambdas);

struct BulkImage {
    Complex z;
    double jacobian;
};

/// Bulk scaling map z = (xi/sqrt(nN))^n with its area Jacobian
/// n^2/(nN)^n |xi|^{2n-2}.
BulkImage bulk_rescale(Complex xi, const EnsembleConfig& cfg);

/// Ginibre kernel (1/pi) exp(-(|x|^2+|y|^2)/2 + x conj(y)).
Complex ginibre_kernel(Complex xi_i, Complex xi_j);

/// Bulk-limit kernel: Ginibre times the factorized per-point phase
/// exp(i gamma (arg xi_i - arg xi_j)), gamma = (1 - n - 2 alpha)/2.
/// The factorized phase makes determinants exactly phase-free.
Complex kernel_bulk_limit(Complex xi_i, Complex xi_j, const EnsembleConfig& cfg);

/// Two-point bulk correlation (1/pi^2)(1 - exp(-|xi_1 - xi_2|^2)).
double two_point_bulk(Complex xi_1, Complex xi_2);

/// Origin-limit kernel sqrt(W(xi_i) W(xi_j)) / (pi prod_i Gamma(1+nu_i))
/// * 0F_{n-1}(-; 1+nu_2,..,1+nu_n; xi_i conj(xi_j)), where W is the origin
/// weight in the convention that reproduces the Ginibre kernel at n=1.
Complex kernel_origin_limit(Complex xi_i, Complex xi_j, const EnsembleConfig& cfg);

/// n=2 specialization assembled from Bessel K factors; an independent code
/// path that must agree with kernel_origin_limit.
Complex kernel_origin_bessel_n2(Complex xi_i, Complex xi_j, int nu2);

using KernelFn = std::function<Complex(Complex, Complex)>;

/// Determinant of [kernel_fn(z_i, z_j)] for 1 <= k <= 8 points. The result is
/// real up to a 1e-10 residue (asserted); returns the real part.
double correlation_det(std::span<const Complex> points, const KernelFn& kernel_fn);

/// Finite-N fractional moment Int |z|^{2s} rho_{n,N} d^2z evaluated by the
/// exact k-sum (valid for s < 1/n); used to cross-check quadrature results.
double finite_fractional_moment(const EnsembleConfig& cfg, double s);

}  // namespace prodcauchy::kernel
