#include "prodcauchy/weight.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "prodcauchy/quadrature.hpp"

namespace prodcauchy::weight {

namespace {

constexpr double kPi = std::numbers::pi;

// log(1 + exp(e)) without overflow.
double log1p_exp(double e) {
    if (e > 36.0) return e + std::log1p(std::exp(-e));
    return std::log1p(std::exp(e));
}

void check_order(const EnsembleConfig& cfg, int max_n) {
    if (cfg.n() > max_n)
        throw std::domain_error("weight: n exceeds the nested-quadrature guard");
}

}  // namespace

double weight_closed_n1(Complex z, int N) {
    if (N < 1) throw std::domain_error("weight_closed_n1: N must be >= 1");
    const double az = std::abs(z);
    return std::pow(1.0 + az * az, -(N + 1.0));
}

double weight_quadrature(Complex z, const EnsembleConfig& cfg, double rel_tol) {
    check_order(cfg, 4);
    const int n = cfg.n();
    const int N = cfg.matrix_size();
    const double az = std::abs(z);
    if (n == 1) return weight_closed_n1(z, N);

    const auto& nu = cfg.nu();
    const int nun = nu[static_cast<std::size_t>(n) - 1];
    if (az == 0.0) {
        if (nun > 0) return 0.0;  // continuous limit of the |z|^{2 nu_n} factor
        throw std::domain_error("weight_quadrature: weight is singular at z = 0 for nu_n = 0, n >= 2");
    }
    const double log_az = std::log(az);

    // log of the z-coupled factor, q = |z|^2 / prod r_j^2 given as exponent.
    auto log_g = [&](double sum_log_r) {
        const double e = 2.0 * (log_az - sum_log_r);
        return 2.0 * nun * log_az - (nun + N + 1.0) * log1p_exp(e);
    };
    auto log_h = [&](int axis, double log_r, double r) {
        return (2.0 * nu[axis] - 2.0 * nun - 1.0) * log_r -
               (nu[axis] + N + 1.0) * std::log1p(r * r);
    };

    const double axis_tol = rel_tol / static_cast<double>(n);
    std::function<double(int, double, double)> nest = [&](int axis, double log_acc,
                                                          double sum_log_r) -> double {
        quad::Options opt;
        opt.rel_tol = axis_tol;
        auto res = quad::integrate_half_line(
            [&](double r) {
                if (r <= 0.0) return 0.0;
                const double lr = std::log(r);
                const double lh = log_acc + log_h(axis, lr, r);
                if (axis == n - 2) {
                    const double le = lh + log_g(sum_log_r + lr);
                    return le < -745.0 ? 0.0 : std::exp(le);
                }
                return nest(axis + 1, lh, sum_log_r + lr);
            },
            opt);
        if (!res.converged)
            throw specfun::ConvergenceError("weight_quadrature: tolerance not reached",
                                            Complex(res.value, 0.0));
        return res.value;
    };

    return std::pow(2.0 * kPi, n - 1) * nest(0, 0.0, 0.0);
}

specfun::GammaProductSpec meijer_weight_spec(const EnsembleConfig& cfg) {
    const int n = cfg.n();
    const int N = cfg.matrix_size();
    specfun::GammaProductSpec spec;
    spec.ascending.reserve(n);
    spec.descending.assign(n, N + 1.0);
    double log_pref = (n - 1) * std::log(kPi);
    for (int v : cfg.nu()) {
        spec.ascending.push_back(static_cast<double>(v));
        log_pref -= std::lgamma(v + N + 1.0);
    }
    spec.log_prefactor = log_pref;
    return spec;
}

double weight_meijer(Complex z, const EnsembleConfig& cfg, const specfun::ContourSpec& contour) {
    const int N = cfg.matrix_size();
    if (!(contour.abscissa > 0.0) || !(contour.abscissa < N + 1.0))
        throw std::domain_error("weight_meijer: contour abscissa must lie in (0, N+1)");
    const double az = std::abs(z);
    const double u = az * az;
    if (u == 0.0) {
        const auto& nu = cfg.nu();
        if (nu.back() > 0) return 0.0;
        if (cfg.n() == 1) return 1.0;
        throw std::domain_error("weight_meijer: weight is singular at z = 0 for nu_n = 0, n >= 2");
    }
    return specfun::mellin_barnes(meijer_weight_spec(cfg), u, contour).value;
}

double weight_meijer(Complex z, const EnsembleConfig& cfg) {
    const double az = std::abs(z);
    const double u = az * az;
    if (u == 0.0) return weight_meijer(z, cfg, specfun::ContourSpec{0.5, 1.0, 16});
    const auto spec = meijer_weight_spec(cfg);
    return specfun::mellin_barnes(spec, u, specfun::default_contour(spec, u)).value;
}

double weight_moment(int k, const EnsembleConfig& cfg) {
    const int N = cfg.matrix_size();
    if (k < 0 || k > N - 1) throw std::domain_error("weight_moment: divergent moment (k > N-1)");
    const int n = cfg.n();
    double lg = n * std::log(kPi) + n * std::lgamma(static_cast<double>(N - k));
    for (int v : cfg.nu()) lg += std::lgamma(v + k + 1.0) - std::lgamma(v + N + 1.0);
    return std::exp(lg);
}

double weight_mellin(double s, const EnsembleConfig& cfg) {
    const int N = cfg.matrix_size();
    if (!(s > 0.0) || !(s < N + 1.0))
        throw std::domain_error("weight_mellin: s must lie in (0, N+1)");
    const int n = cfg.n();
    double lg = (n - 1) * std::log(kPi) + n * std::lgamma(N + 1.0 - s);
    for (int v : cfg.nu()) lg += std::lgamma(v + s) - std::lgamma(v + N + 1.0);
    return std::exp(lg);
}

double weight_saddle_asymptotic(Complex z, const EnsembleConfig& cfg) {
    const double az = std::abs(z);
    if (az == 0.0) throw std::domain_error("weight_saddle_asymptotic: z must be nonzero");
    const int n = cfg.n();
    const int N = cfg.matrix_size();
    if (N < 2) throw std::domain_error("weight_saddle_asymptotic: N must be >= 2");
    const double alpha = cfg.alpha();
    const double lg = 1.5 * (n - 1) * std::log(2.0 * kPi) - (n - 1) * std::log(2.0) -
                      0.5 * (n - 1) * std::log(static_cast<double>(N)) - 0.5 * std::log(n) +
                      (1.0 - n + 2.0 * alpha) / n * std::log(az) -
                      (n * N + alpha + 1.0) * std::log1p(std::pow(az, 2.0 / n));
    return std::exp(lg);
}

double weight_origin_limit(Complex xi, const EnsembleConfig& cfg, double rel_tol) {
    check_order(cfg, 4);
    const int n = cfg.n();
    const double ax = std::abs(xi);
    if (n == 1) return std::exp(-ax * ax);
    if (ax == 0.0)
        throw std::domain_error("weight_origin_limit: xi = 0 not supported for n >= 2");

    const auto& nu = cfg.nu();
    const int nun = nu[static_cast<std::size_t>(n) - 1];
    const double log_ax = std::log(ax);

    const double axis_tol = rel_tol / static_cast<double>(n);
    std::function<double(int, double, double)> nest = [&](int axis, double log_acc,
                                                          double sum_log_r) -> double {
        quad::Options opt;
        opt.rel_tol = axis_tol;
        auto res = quad::integrate_half_line(
            [&](double r) {
                if (r <= 0.0) return 0.0;
                const double lr = std::log(r);
                const double lh =
                    log_acc + (2.0 * nu[axis] - 2.0 * nun - 1.0) * lr - r * r;
                if (axis == n - 2) {
                    const double e = 2.0 * (log_ax - (sum_log_r + lr));
                    const double le = lh - (e > 700.0 ? std::exp(700.0) : std::exp(e));
                    return le < -745.0 ? 0.0 : std::exp(le);
                }
                return nest(axis + 1, lh, sum_log_r + lr);
            },
            opt);
        if (!res.converged)
            throw specfun::ConvergenceError("weight_origin_limit: tolerance not reached",
                                            Complex(res.value, 0.0));
        return res.value;
    };

    const double psi = nest(0, 0.0, 0.0);
    return std::pow(2.0 * kPi, n - 1) * std::exp(2.0 * nun * log_ax) * psi;
}

specfun::GammaProductSpec origin_weight_spec(const EnsembleConfig& cfg) {
    const int n = cfg.n();
    const auto& nu = cfg.nu();
    const int nun = nu[static_cast<std::size_t>(n) - 1];
    specfun::GammaProductSpec spec;
    spec.ascending.reserve(n);
    for (int v : nu) spec.ascending.push_back(static_cast<double>(v - nun));
    spec.log_prefactor = (n - 1) * std::log(kPi);
    spec.power_shift = static_cast<double>(nun);
    return spec;
}

double weight_origin_meijer(Complex xi, const EnsembleConfig& cfg) {
    const double ax = std::abs(xi);
    const double u = ax * ax;
    if (!(u > 0.0))
        throw std::domain_error("weight_origin_meijer: xi must be nonzero");
    const auto spec = origin_weight_spec(cfg);
    return specfun::mellin_barnes(spec, u).value;
}

}  // namespace prodcauchy::weight
