#include "prodcauchy/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "prodcauchy/quadrature.hpp"

namespace prodcauchy::kernel {

namespace {

constexpr double kPi = std::numbers::pi;

double eval_weight(Complex z, const EnsembleConfig& cfg, WeightRoute route) {
    switch (route) {
        case WeightRoute::automatic:
            return cfg.n() == 1 ? weight::weight_closed_n1(z, cfg.matrix_size())
                                : weight::weight_meijer(z, cfg);
        case WeightRoute::closed:
            if (cfg.n() != 1)
                throw std::domain_error("kernel: closed weight route requires n = 1");
            return weight::weight_closed_n1(z, cfg.matrix_size());
        case WeightRoute::meijer:
            return weight::weight_meijer(z, cfg);
        case WeightRoute::quadrature:
            return weight::weight_quadrature(z, cfg);
    }
    throw std::logic_error("kernel: unknown weight route");
}

}  // namespace

ScaledComplex kernel_series(const EnsembleConfig& cfg, Complex w) {
    const int n = cfg.n();
    const int N = cfg.matrix_size();
    const auto& nu = cfg.nu();

    double lcoef = -n * std::lgamma(static_cast<double>(N));
    for (int v : nu) lcoef += std::lgamma(v + N + 1.0) - std::lgamma(v + 1.0);

    const double aw = std::abs(w);
    if (aw == 0.0) return {Complex(1.0, 0.0), lcoef};
    const double law = std::log(aw);
    const double phw = std::arg(w);

    std::vector<double> lterm(static_cast<std::size_t>(N));
    double lmax = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < N; ++k) {
        lterm[k] = lcoef + k * law;
        lmax = std::max(lmax, lterm[k]);
        if (k + 1 < N) {
            double step = n * std::log(static_cast<double>(N - k - 1));
            for (int v : nu) step -= std::log(v + k + 1.0);
            lcoef += step;
        }
    }
    Complex acc(0.0, 0.0);
    for (int k = 0; k < N; ++k) {
        const double mag = std::exp(lterm[k] - lmax);
        acc += mag * Complex(std::cos(k * phw), std::sin(k * phw));
    }
    return {acc, lmax};
}

double norm_h(int k, const EnsembleConfig& cfg) {
    const int N = cfg.matrix_size();
    if (k < 0 || k > N - 1) throw std::domain_error("norm_h: k must lie in [0, N-1]");
    const int n = cfg.n();
    double lg = n * std::log(kPi) + n * std::lgamma(static_cast<double>(N - k));
    for (int v : cfg.nu()) lg += std::lgamma(v + k + 1.0) - std::lgamma(v + N + 1.0);
    return std::exp(lg);
}

KernelValue kernel_finite(Complex z_i, Complex z_j, const EnsembleConfig& cfg,
                          WeightRoute route) {
    KernelValue kv;
    kv.weight_i = eval_weight(z_i, cfg, route);
    kv.weight_j = eval_weight(z_j, cfg, route);
    const ScaledComplex f = kernel_series(cfg, z_i * std::conj(z_j));
    kv.stabilizer = f.log_scale;
    if (kv.weight_i == 0.0 || kv.weight_j == 0.0) {
        kv.value = Complex(0.0, 0.0);
        return kv;
    }
    const double log_pref = -cfg.n() * std::log(kPi) +
                            0.5 * (std::log(kv.weight_i) + std::log(kv.weight_j));
    kv.value = f.mantissa * std::exp(log_pref + f.log_scale);
    return kv;
}

FiniteDensity::FiniteDensity(EnsembleConfig cfg, WeightRoute route)
    : cfg_(std::move(cfg)), route_(route) {
    const int N = cfg_.matrix_size();
    quad::Options opt;
    opt.rel_tol = (cfg_.n() == 1 && (route == WeightRoute::automatic ||
                                     route == WeightRoute::closed))
                      ? 1e-12
                      : 1e-9;
    auto res = quad::integrate_half_line(
        [&](double r) {
            if (r <= 0.0) return 0.0;
            const Complex z(r, 0.0);
            return 2.0 * kPi * r * kernel_finite(z, z, cfg_, route_).value.real() / N;
        },
        opt);
    raw_mass_ = res.value;
    if (!(raw_mass_ > 0.0) || !std::isfinite(raw_mass_))
        throw std::runtime_error("FiniteDensity: normalization audit failed");
    c_norm_ = 1.0 / raw_mass_;
}

double FiniteDensity::operator()(Complex z) const {
    return c_norm_ * kernel_finite(z, z, cfg_, route_).value.real() / cfg_.matrix_size();
}

double density_finite(Complex z, const EnsembleConfig& cfg) {
    return FiniteDensity(cfg)(z);
}

double density_macroscopic(Complex z, int n) {
    if (n < 1) throw std::domain_error("density_macroscopic: n must be >= 1");
    const double az = std::abs(z);
    if (az == 0.0) {
        if (n == 1) return 1.0 / kPi;
        throw std::domain_error("density_macroscopic: singular at z = 0 for n >= 2");
    }
    const double p = std::pow(az, 2.0 / n);
    return std::pow(az, (2.0 - 2.0 * n) / n) / (kPi * n * (1.0 + p) * (1.0 + p));
}

double macroscopic_mellin(double s, std::span<const double> lambdas) {
    const int n = static_cast<int>(lambdas.size());
    if (n < 1) throw std::domain_error("macroscopic_mellin: at least one charge required");
    for (double l : lambdas)
        if (l < 0.0) throw std::domain_error("macroscopic_mellin: charges must be >= 0");
    if (!(std::abs(s) * n < 1.0))
        throw std::domain_error("macroscopic_mellin: requires |s| < 1/n");
    if (s == 0.0) return 1.0;
    auto res = quad::integrate_unit_tanh_sinh(
        [&](double t, double one_minus_t) {
            double lg = -n * s * std::log(one_minus_t);
            for (double l : lambdas) lg += s * std::log(t + l);
            return std::exp(lg);
        },
        1e-13);
    return res.value;
}

BulkImage bulk_rescale(Complex xi, const EnsembleConfig& cfg) {
    const int n = cfg.n();
    const double nN = static_cast<double>(n) * cfg.matrix_size();
    const double ax = std::abs(xi);
    BulkImage img;
    img.z = std::polar(std::pow(ax / std::sqrt(nN), n), n * std::arg(xi));
    img.jacobian = n * n / std::pow(nN, n) * std::pow(ax, 2.0 * n - 2.0);
    return img;
}

Complex ginibre_kernel(Complex xi_i, Complex xi_j) {
    return std::exp(-0.5 * (std::norm(xi_i) + std::norm(xi_j)) + xi_i * std::conj(xi_j)) /
           kPi;
}

Complex kernel_bulk_limit(Complex xi_i, Complex xi_j, const EnsembleConfig& cfg) {
    if (xi_i == Complex(0.0, 0.0) || xi_j == Complex(0.0, 0.0))
        throw std::domain_error("kernel_bulk_limit: phase undefined at xi = 0");
    const double gamma = 0.5 * (1.0 - cfg.n() - 2.0 * cfg.alpha());
    const Complex phase = std::exp(Complex(0.0, gamma * (std::arg(xi_i) - std::arg(xi_j))));
    return phase * ginibre_kernel(xi_i, xi_j);
}

double two_point_bulk(Complex xi_1, Complex xi_2) {
    return -std::expm1(-std::norm(xi_1 - xi_2)) / (kPi * kPi);
}

Complex kernel_origin_limit(Complex xi_i, Complex xi_j, const EnsembleConfig& cfg) {
    const int n = cfg.n();
    const double pin1 = std::pow(kPi, n - 1);
    const double wi = weight::weight_origin_limit(xi_i, cfg) / pin1;
    const double wj = weight::weight_origin_limit(xi_j, cfg) / pin1;
    double log_gamma_prod = 0.0;
    std::vector<double> lower;
    const auto& nu = cfg.nu();
    for (int i = 0; i < n; ++i) {
        log_gamma_prod += std::lgamma(nu[i] + 1.0);
        if (i > 0) lower.push_back(nu[i] + 1.0);
    }
    const Complex f = specfun::hypergeom_pFq({}, lower, xi_i * std::conj(xi_j), 1e-16, 500);
    return std::sqrt(wi * wj) / (kPi * std::exp(log_gamma_prod)) * f;
}

Complex kernel_origin_bessel_n2(Complex xi_i, Complex xi_j, int nu2) {
    if (nu2 < 0) throw std::domain_error("kernel_origin_bessel_n2: nu2 must be >= 0");
    const double ai = std::abs(xi_i), aj = std::abs(xi_j);
    if (ai == 0.0 || aj == 0.0)
        throw std::domain_error("kernel_origin_bessel_n2: phase undefined at xi = 0");
    const Complex w = xi_i * std::conj(xi_j);
    const double lower[1] = {nu2 + 1.0};
    const Complex f = specfun::hypergeom_pFq({}, std::span<const double>(lower, 1), w, 1e-16, 500);
    // The unimodular prefactor (|xi_i xi_j| / (xi_i conj(xi_j)))^{nu2/2} cancels
    // the phase of w^{nu2/2} exactly; the product is |w|^{nu2/2} on every branch.
    const double amp = std::pow(std::abs(w), 0.5 * nu2);
    const double kk = specfun::bessel_k(nu2, 2.0 * ai) * specfun::bessel_k(nu2, 2.0 * aj);
    return 2.0 / kPi * amp * std::sqrt(kk) / std::tgamma(nu2 + 1.0) * f;
}

double correlation_det(std::span<const Complex> points, const KernelFn& kernel_fn) {
    const int k = static_cast<int>(points.size());
    if (k < 1 || k > 8)
        throw std::domain_error("correlation_det: 1 <= k <= 8 points supported");
    Eigen::MatrixXcd m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = kernel_fn(points[i], points[j]);
    const Complex det = m.determinant();
    if (std::abs(det.imag()) > 1e-10 * std::max(1.0, std::abs(det.real())))
        throw std::runtime_error("correlation_det: imaginary residue exceeds 1e-10");
    return det.real();
}

double finite_fractional_moment(const EnsembleConfig& cfg, double s) {
    const int n = cfg.n();
    const int N = cfg.matrix_size();
    if (!(s < 1.0 / n) || !(s > -1.0))
        throw std::domain_error("finite_fractional_moment: requires -1 < s < 1/n");
    const auto& nu = cfg.nu();
    double acc = 0.0;
    for (int k = 0; k < N; ++k) {
        double lg = n * (std::lgamma(N - k - s) - std::lgamma(static_cast<double>(N - k)));
        for (int v : nu) lg += std::lgamma(v + k + s + 1.0) - std::lgamma(v + k + 1.0);
        acc += std::exp(lg);
    }
    return acc / N;
}

}  // namespace prodcauchy::kernel
