#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

// Adaptive Gauss-Kronrod (7,15) quadrature with a global error heap, a
// tan-substitution wrapper for half-line integrals, and a tanh-sinh rule for
// (0,1) integrands with algebraic endpoint singularities.

namespace prodcauchy::quad {

struct Options {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    int max_intervals = 5000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

namespace detail {

// QUADPACK dqk15 abscissae/weights on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv1[7], fv2[7];
    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = half * kXgk[jtw];
        fv1[jtw] = f(center - absc);
        fv2[jtw] = f(center + absc);
        const double fsum = fv1[jtw] + fv2[jtw];
        resg += kWg[j] * fsum;
        resk += kWgk[jtw] * fsum;
        resabs += kWgk[jtw] * (std::abs(fv1[jtw]) + std::abs(fv2[jtw]));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = half * kXgk[jtwm1];
        fv1[jtwm1] = f(center - absc);
        fv2[jtwm1] = f(center + absc);
        const double fsum = fv1[jtwm1] + fv2[jtwm1];
        resk += kWgk[jtwm1] * fsum;
        resabs += kWgk[jtwm1] * (std::abs(fv1[jtwm1]) + std::abs(fv2[jtwm1]));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
    return {a, b, resk * half, err};
}

}  // namespace detail

/// Adaptive integral of f over [a, b]. `seeds` lists interior breakpoints for
/// the initial subdivision (useful when the mass sits in a narrow peak the
/// first panel would overlook).
template <class F>
Result integrate(F&& f, double a, double b, Options opt = {},
                 std::span<const double> seeds = {}) {
    std::priority_queue<detail::Segment> heap;
    double total = 0.0, toterr = 0.0;
    int count = 0;
    double prev = a;
    auto push = [&](double lo, double hi) {
        auto seg = detail::gk15(f, lo, hi);
        if (!std::isfinite(seg.value) || !std::isfinite(seg.error))
            throw std::runtime_error("quadrature: non-finite integrand");
        total += seg.value;
        toterr += seg.error;
        heap.push(seg);
        ++count;
    };
    for (double s : seeds) {
        if (s > prev && s < b) {
            push(prev, s);
            prev = s;
        }
    }
    push(prev, b);
    while (count < opt.max_intervals) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (toterr <= target) break;
        detail::Segment worst = heap.top();
        heap.pop();
        total -= worst.value;
        toterr -= worst.error;
        --count;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at rounding limit
            total += worst.value;
            toterr += worst.error;
            heap.push(worst);
            ++count;
            break;
        }
        push(worst.a, mid);
        push(mid, worst.b);
    }
    Result res;
    res.value = total;
    res.error = toterr;
    res.intervals = count;
    res.converged = toterr <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) ||
                    toterr <= 1e-15 * std::abs(total) + 1e-300;
    return res;
}

/// Integral of f over (0, inf) via r = tan(theta). The seed breakpoints cover
/// peaks from r ~ 1e-3 up to the polynomial tails the weights produce.
template <class F>
Result integrate_half_line(F&& f, Options opt = {}) {
    auto g = [&f](double theta) {
        const double c = std::cos(theta);
        const double r = std::tan(theta);
        const double fr = f(r);
        return fr == 0.0 ? 0.0 : fr / (c * c);
    };
    static const double kRadialSeeds[] = {1e-3, 1e-2, 0.05, 0.15, 0.4, 1.0, 2.5, 8.0, 50.0};
    double seeds[std::size(kRadialSeeds)];
    for (std::size_t i = 0; i < std::size(kRadialSeeds); ++i) seeds[i] = std::atan(kRadialSeeds[i]);
    const double half_pi = std::acos(-1.0) / 2.0;
    return integrate(g, 0.0, half_pi, opt, std::span<const double>(seeds, std::size(seeds)));
}

/// tanh-sinh quadrature over (0, 1); handles integrable algebraic endpoint
/// singularities such as (1-t)^{-n s}. The integrand receives both x and
/// 1 - x, each computed to full precision (x alone cannot represent the
/// distance to the far endpoint).
template <class F>
Result integrate_unit_tanh_sinh(F&& f, double rel_tol = 1e-12) {
    const double pi_half = std::acos(-1.0) / 2.0;
    const double tmax = 3.8;
    auto node = [&](double t, double& x, double& omx, double& w) {
        const double s = pi_half * std::sinh(t);
        const double sech = 1.0 / std::cosh(s);
        omx = 1.0 / (1.0 + std::exp(2.0 * s));  // = (1 - tanh s)/2, no cancellation
        x = 1.0 - omx;
        w = 0.5 * pi_half * std::cosh(t) * sech * sech;
    };
    double h = 0.5;
    double x, omx, w;
    node(0.0, x, omx, w);
    double sum = f(x, omx) * w;
    for (double t = h; t <= tmax; t += h) {
        node(t, x, omx, w);
        if (omx > 0.0) sum += f(x, omx) * w;
        node(-t, x, omx, w);
        if (x > 0.0) sum += f(x, omx) * w;
    }
    double integral = sum * h;
    Result res;
    for (int level = 1; level <= 10; ++level) {
        h *= 0.5;
        for (double t = h; t <= tmax; t += 2.0 * h) {
            node(t, x, omx, w);
            if (omx > 0.0) sum += f(x, omx) * w;
            node(-t, x, omx, w);
            if (x > 0.0) sum += f(x, omx) * w;
        }
        const double refined = sum * h;
        const double diff = std::abs(refined - integral);
        integral = refined;
        res.intervals = level;
        if (!std::isfinite(integral)) throw std::runtime_error("quadrature: non-finite integrand");
        if (diff <= rel_tol * std::abs(integral)) {
            res.converged = true;
            res.error = diff;
            break;
        }
        res.error = diff;
    }
    res.value = integral;
    return res;
}

}  // namespace prodcauchy::quad
