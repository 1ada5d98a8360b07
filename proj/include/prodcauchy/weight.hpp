#pragma once

#include <complex>

#include "prodcauchy/ensemble.hpp"
#include "prodcauchy/specfun.hpp"

// The eigenvalue weight of the product ensemble, evaluated by independent
// routes (closed form for n=1, iterated quadrature, Mellin-Barnes), together
// with its moments, Mellin transform and large-N asymptotics.

namespace prodcauchy::weight {

using Complex = std::complex<double>;

/// n=1 closed form (1 + |z|^2)^{-(N+1)}.
double weight_closed_n1(Complex z, int N);

/// Direct evaluation of the (n-1)-fold radial integral representation by
/// nested adaptive quadrature (r = tan(theta) on each axis, integrand in log
/// form). Supported for n <= 4. rel_tol is the per-call target; a
/// ConvergenceError carries the best estimate if it cannot be met.
double weight_quadrature(Complex z, const EnsembleConfig& cfg, double rel_tol = 1e-9);

/// Gamma-product spec of the weight's Mellin-Barnes representation:
/// ascending {0, nu_2, .., nu_n}, descending {N+1 (n times)},
/// prefactor pi^{n-1} / prod_i Gamma(nu_i + N + 1), argument u = |z|^2.
specfun::GammaProductSpec meijer_weight_spec(const EnsembleConfig& cfg);

/// Weight via the Mellin-Barnes route on an explicit contour
/// (0 < abscissa < N+1 required) or on the per-point default contour.
double weight_meijer(Complex z, const EnsembleConfig& cfg, const specfun::ContourSpec& contour);
double weight_meijer(Complex z, const EnsembleConfig& cfg);

/// Radial moments m_{2k} = pi^n Gamma(N-k)^n prod_i Gamma(nu_i+k+1)/Gamma(nu_i+N+1),
/// finite for 0 <= k <= N-1 only.
double weight_moment(int k, const EnsembleConfig& cfg);

/// Mellin transform in u = |z|^2 of the radial weight,
/// pi^{n-1} prod_j Gamma(nu_j+s) Gamma(N+1-s) / Gamma(nu_j+N+1) on 0 < s < N+1.
/// Satisfies m_{2k} = pi * weight_mellin(k+1).
double weight_mellin(double s, const EnsembleConfig& cfg);

/// Large-N saddle-point asymptotic at fixed z != 0 (exact for n = 1).
double weight_saddle_asymptotic(Complex z, const EnsembleConfig& cfg);

/// N-free origin limit W_n(xi) = (2*pi)^{n-1} |xi|^{2 nu_n} psi_n(|xi|) with
/// psi_n the (n-1)-fold Gaussian-type integral; N^alpha * weight(xi/N^{n/2})
/// converges to it. Closed form exp(-|xi|^2) for n=1.
double weight_origin_limit(Complex xi, const EnsembleConfig& cfg, double rel_tol = 1e-10);

/// G^{n,0}_{0,n} spec of the same limit object (ascending {nu_j - nu_n},
/// power shift nu_n, argument u = |xi|^2) and its Mellin-Barnes evaluation;
/// kept as an independent cross-check of weight_origin_limit.
specfun::GammaProductSpec origin_weight_spec(const EnsembleConfig& cfg);
double weight_origin_meijer(Complex xi, const EnsembleConfig& cfg);

}  // namespace prodcauchy::weight
