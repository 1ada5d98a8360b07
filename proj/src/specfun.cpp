#include "prodcauchy/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace prodcauchy::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosCoeff[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

bool is_gamma_pole(Complex z) {
    if (z.imag() != 0.0) return false;
    const double r = std::rint(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < 1e-14 * std::max(1.0, std::abs(z.real()));
}

Complex log_gamma_positive(Complex z) {
    // Valid for Re z >= 0.5.
    const Complex w = z - 1.0;
    Complex a(kLanczosCoeff[0], 0.0);
    for (int k = 1; k < 15; ++k) a += kLanczosCoeff[k] / (w + static_cast<double>(k));
    const Complex t = w + kLanczosG + 0.5;
    return 0.5 * kLog2Pi + (w + 0.5) * std::log(t) - t + std::log(a);
}

// log(sin(pi z)) without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
    const Complex w = kPi * z;
    if (std::abs(w.imag()) < 16.0) return std::log(std::sin(w));
    const Complex i(0.0, 1.0);
    if (w.imag() > 0.0)
        return std::log(0.5 * i) - i * w + std::log(1.0 - std::exp(2.0 * i * w));
    return std::log(-0.5 * i) + i * w + std::log(1.0 - std::exp(-2.0 * i * w));
}

std::optional<long long> as_nonpositive_int(double x) {
    const double r = std::rint(x);
    if (r <= 0.0 && std::abs(x - r) < 1e-12 * std::max(1.0, std::abs(x)))
        return static_cast<long long>(r);
    return std::nullopt;
}

}  // namespace

Complex log_gamma(Complex z) {
    if (is_gamma_pole(z)) {
        std::ostringstream msg;
        msg << "log_gamma: pole at z = (" << z.real() << ", " << z.imag() << ")";
        throw std::domain_error(msg.str());
    }
    if (z.real() >= 0.5) return log_gamma_positive(z);
    // Reflection Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(kPi) - log_sin_pi(z) - log_gamma_positive(1.0 - z);
}

double log_gamma_real(double x) {
    if (x <= 0.0 && std::rint(x) == x) throw std::domain_error("log_gamma_real: pole");
    if (x <= 0.0) throw std::domain_error("log_gamma_real: requires x > 0");
    return std::lgamma(x);
}

double pochhammer(double a, int k) {
    if (k < 0) throw std::domain_error("pochhammer: k must be >= 0");
    if (k == 0) return 1.0;
    if (k <= 128) {
        double p = 1.0;
        for (int i = 0; i < k; ++i) p *= a + static_cast<double>(i);
        if (std::isfinite(p)) return p;
    }
    if (auto m = as_nonpositive_int(a); m && k > -*m) return 0.0;
    if (a > 0.0) return std::exp(std::lgamma(a + k) - std::lgamma(a));
    const Complex v = std::exp(log_gamma(Complex(a + k)) - log_gamma(Complex(a)));
    return v.real();
}

Complex hypergeom_pFq(std::span<const double> upper, std::span<const double> lower,
                      Complex z, double tol, int max_terms) {
    if (max_terms < 1) throw std::domain_error("hypergeom_pFq: max_terms must be >= 1");
    long long terminate_at = -1;  // last term index when the series terminates
    for (double a : upper) {
        if (auto m = as_nonpositive_int(a)) {
            const long long stop = -*m;
            terminate_at = terminate_at < 0 ? stop : std::min(terminate_at, stop);
        }
    }
    for (double b : lower) {
        if (auto m = as_nonpositive_int(b)) {
            const long long pole_free_terms = -*m;  // (b)_k is pole-free for k <= -b
            if (terminate_at < 0 || terminate_at > pole_free_terms)
                throw std::domain_error(
                    "hypergeom_pFq: lower parameter pole precedes termination");
        }
    }
    if (terminate_at < 0) {
        if (upper.size() > lower.size() + 1)
            throw std::domain_error("hypergeom_pFq: divergent series (p > q+1)");
        if (upper.size() == lower.size() + 1 && std::abs(z) >= 1.0)
            throw std::domain_error("hypergeom_pFq: |z| >= 1 outside the p = q+1 disk");
    }

    Complex sum(0.0, 0.0);
    Complex term(1.0, 0.0);
    int small_streak = 0;
    for (long long k = 0;; ++k) {
        sum += term;
        if (terminate_at >= 0 && k == terminate_at) return sum;
        if (terminate_at < 0 && k >= 1) {
            if (std::abs(term) <= tol * std::abs(sum)) {
                if (++small_streak >= 2) return sum;
            } else {
                small_streak = 0;
            }
        }
        if (k + 1 >= max_terms)
            throw ConvergenceError("hypergeom_pFq: max_terms exhausted", sum);
        double ratio = 1.0;
        for (double a : upper) ratio *= a + static_cast<double>(k);
        for (double b : lower) ratio /= b + static_cast<double>(k);
        term *= ratio * z / static_cast<double>(k + 1);
    }
}

double GammaProductSpec::lower_abscissa() const {
    double lo = -std::numeric_limits<double>::infinity();
    for (double b : ascending) lo = std::max(lo, -b);
    return lo;
}

double GammaProductSpec::upper_abscissa() const {
    double hi = std::numeric_limits<double>::infinity();
    for (double a : descending) hi = std::min(hi, a);
    return hi;
}

void GammaProductSpec::validate() const {
    if (ascending.empty())
        throw std::domain_error("GammaProductSpec: ascending factors required");
    for (double b : ascending)
        if (!std::isfinite(b)) throw std::domain_error("GammaProductSpec: non-finite offset");
    for (double a : descending)
        if (!std::isfinite(a)) throw std::domain_error("GammaProductSpec: non-finite offset");
    if (!std::isfinite(log_prefactor) || !std::isfinite(power_shift))
        throw std::domain_error("GammaProductSpec: non-finite prefactor/shift");
    if (!(lower_abscissa() < upper_abscissa()))
        throw std::domain_error("GammaProductSpec: empty admissible strip");
}

namespace {

double real_axis_log_integrand(const GammaProductSpec& spec, double c, double log_u) {
    double g = -c * log_u;
    for (double b : spec.ascending) g += std::lgamma(b + c);
    for (double a : spec.descending) g += std::lgamma(a - c);
    return g;
}

double contour_log_modulus(const GammaProductSpec& spec, double c, double t, double log_u) {
    Complex L(-c * log_u, 0.0);
    const Complex s(c, t);
    for (double b : spec.ascending) L += log_gamma(b + s);
    for (double a : spec.descending) L += log_gamma(a - s);
    return L.real();
}

}  // namespace

ContourSpec default_contour(const GammaProductSpec& spec, double u, int node_count) {
    spec.validate();
    if (!(u > 0.0) || !std::isfinite(u))
        throw std::domain_error("default_contour: u must be positive and finite");
    const double log_u = std::log(u);
    const double lo = spec.lower_abscissa();
    double hi = spec.upper_abscissa();
    if (!std::isfinite(hi)) {
        // Bracket the minimizer: the log-integrand grows like c log c eventually.
        double span = 2.0;
        for (int i = 0; i < 80; ++i) {
            const double mid = real_axis_log_integrand(spec, lo + 0.5 * span, log_u);
            const double end = real_axis_log_integrand(spec, lo + span, log_u);
            if (end > mid) break;
            span *= 2.0;
        }
        hi = lo + 2.0 * span;
    }
    const double margin = std::max(1e-8, 1e-3 * std::min(hi - lo, 1.0));
    double a = lo + margin, b = hi - margin;
    for (int i = 0; i < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++i) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (real_axis_log_integrand(spec, m1, log_u) <
            real_axis_log_integrand(spec, m2, log_u))
            b = m2;
        else
            a = m1;
    }
    double c = 0.5 * (a + b);
    c = std::min(std::max(c, lo + margin), hi - margin);

    const double peak = contour_log_modulus(spec, c, 0.0, log_u);
    double T = 4.0;
    while (T < 1e7 && contour_log_modulus(spec, c, T, log_u) > peak - 46.0) T *= 1.5;
    return ContourSpec{c, T, node_count};
}

MellinBarnesResult mellin_barnes(const GammaProductSpec& spec, double u,
                                 const ContourSpec& contour) {
    spec.validate();
    if (!(u > 0.0) || !std::isfinite(u))
        throw std::domain_error("mellin_barnes: u must be positive and finite");
    if (!(contour.half_extent > 0.0))
        throw std::domain_error("mellin_barnes: half_extent must be positive");
    if (contour.node_count < 16)
        throw std::domain_error("mellin_barnes: node_count must be >= 16");
    const double c = contour.abscissa;
    if (!(c > spec.lower_abscissa()) || !(c < spec.upper_abscissa()))
        throw std::domain_error("mellin_barnes: inadmissible contour abscissa");

    const double log_u = std::log(u);
    const int m = contour.node_count;
    const double T = contour.half_extent;
    const double h = 2.0 * T / static_cast<double>(m - 1);

    std::vector<Complex> node_log(m);
    double max_re = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) {
        const double t = -T + h * static_cast<double>(k);
        const Complex s(c, t);
        Complex L = -s * log_u;
        for (double b : spec.ascending) L += log_gamma(b + s);
        for (double a : spec.descending) L += log_gamma(a - s);
        node_log[k] = L;
        max_re = std::max(max_re, L.real());
    }
    Complex acc(0.0, 0.0);
    for (int k = 0; k < m; ++k) {
        const double w = (k == 0 || k == m - 1) ? 0.5 : 1.0;
        acc += w * std::exp(node_log[k] - max_re);
    }
    const double total_log = max_re + spec.log_prefactor + spec.power_shift * log_u;
    const Complex raw = acc * (h / (2.0 * kPi)) * std::exp(total_log);
    if (!std::isfinite(raw.real()) || !std::isfinite(raw.imag()))
        throw std::runtime_error("mellin_barnes: non-finite intermediate");

    MellinBarnesResult res;
    res.value = raw.real();
    res.imag_ratio = raw.real() == 0.0
                         ? (raw.imag() == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                         : std::abs(raw.imag()) / std::abs(raw.real());
    res.accuracy_warning = res.imag_ratio > 1e-6;
    return res;
}

MellinBarnesResult mellin_barnes(const GammaProductSpec& spec, double u) {
    return mellin_barnes(spec, u, default_contour(spec, u));
}

double bessel_j(double order, double x) {
    if (order < 0.0) throw std::domain_error("bessel_j: order must be >= 0");
    if (std::abs(x) > 20.0)
        throw std::domain_error("bessel_j: |x| <= 20 supported (series evaluation)");
    const bool integer_order = std::rint(order) == order;
    if (x < 0.0 && !integer_order)
        throw std::domain_error("bessel_j: x < 0 requires integer order");
    const double ax = std::abs(x);
    if (ax == 0.0) return order == 0.0 ? 1.0 : 0.0;
    const double lower[1] = {order + 1.0};
    const Complex f = hypergeom_pFq({}, std::span<const double>(lower, 1),
                                    Complex(-0.25 * ax * ax, 0.0), 1e-16, 400);
    double v = std::exp(order * std::log(0.5 * ax) - std::lgamma(order + 1.0)) * f.real();
    if (x < 0.0 && std::fmod(order, 2.0) != 0.0) v = -v;
    return v;
}

double bessel_k(double order, double x) {
    if (order < 0.0) throw std::domain_error("bessel_k: order must be >= 0");
    if (!(x > 0.0)) throw std::domain_error("bessel_k: x must be positive");
    // K_v(x) = (1/2) (x/2)^v G^{2,0}_{0,2}(-; -v, 0 | x^2/4).
    GammaProductSpec spec;
    spec.ascending = {-order, 0.0};
    spec.log_prefactor = -std::log(2.0) + order * std::log(0.5 * x);
    const double u = 0.25 * x * x;
    return mellin_barnes(spec, u).value;
}

}  // namespace prodcauchy::specfun
