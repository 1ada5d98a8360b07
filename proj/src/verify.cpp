#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "prodcauchy/harness.hpp"
#include "prodcauchy/kernel.hpp"
#include "prodcauchy/mcsim.hpp"
#include "prodcauchy/quadrature.hpp"
#include "prodcauchy/weight.hpp"

// The verification suites: every check pins its ensemble, oracle and
// tolerance in code; RunConfig.tolerances may override single tolerances by
// check id (used to prove the harness fails loudly).

namespace prodcauchy::harness {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Ctx {
    const RunConfig& cfg;
    int threads;
    std::vector<VerificationReport> reports;

    double tol(const std::string& id, double fallback) const {
        const auto it = cfg.tolerances.find(id);
        return it == cfg.tolerances.end() ? fallback : it->second;
    }
    void add(const std::string& id, double computed, double reference, double fallback_tol,
             const std::string& provenance) {
        reports.push_back(make_report(id, computed, reference, tol(id, fallback_tol), provenance));
    }
};

double rel_dev(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

double radial_integral(const std::function<double(double)>& f, double rel_tol) {
    quad::Options opt;
    opt.rel_tol = rel_tol;
    return quad::integrate_half_line(f, opt).value;
}

std::vector<double> linspace(double a, double b, int m) {
    std::vector<double> v(m);
    for (int i = 0; i < m; ++i) v[i] = a + (b - a) * i / (m - 1.0);
    return v;
}

// --- criterion 1: n=1 identity chain -------------------------------------
void check_a01(Ctx& ctx) {
    double worst = 0.0;
    for (int N : {1, 3, 8}) {
        const EnsembleConfig cfg = EnsembleConfig::square(1, N);
        for (double r : linspace(0.05, 5.0, 50)) {
            const Complex z(r, 0.0);
            const double exact = weight::weight_closed_n1(z, N);
            worst = std::max(worst, rel_dev(weight::weight_meijer(z, cfg), exact));
            worst = std::max(worst, rel_dev(weight::weight_quadrature(z, cfg), exact));
        }
    }
    ctx.add("A01.identity-chain-n1", worst, 0.0, 1e-8,
            "closed form (1+r^2)^{-(N+1)} vs Mellin-Barnes and quadrature routes, N in {1,3,8}");
}

// --- criterion 2: moment closure ------------------------------------------
void check_a02(Ctx& ctx) {
    double worst = 0.0;
    for (const auto& dims : {std::vector<int>{3, 3, 4}, std::vector<int>{2, 2, 3, 4}}) {
        const EnsembleConfig cfg(dims);
        const auto spec = weight::meijer_weight_spec(cfg);
        for (int k = 0; k < cfg.matrix_size(); ++k) {
            const double closure = 2.0 * kPi *
                                   radial_integral(
                                       [&](double r) {
                                           if (r <= 0.0) return 0.0;
                                           const double w = specfun::mellin_barnes(spec, r * r).value;
                                           return std::pow(r, 2.0 * k + 1.0) * w;
                                       },
                                       5e-8);
            worst = std::max(worst, rel_dev(closure, weight::weight_moment(k, cfg)));
        }
    }
    ctx.add("A02.moment-closure", worst, 0.0, 1e-5,
            "radial quadrature of the Mellin-Barnes weight vs the moment formula, "
            "dims (3,3,4) and (2,2,3,4)");
}

// --- criterion 3: route agreement n >= 2 ----------------------------------
void check_a03(Ctx& ctx) {
    double worst = 0.0;
    const std::vector<std::vector<int>> profiles = {
        {2, 2, 2}, {2, 3, 3}, {2, 2, 2, 2}, {2, 2, 3, 3}, {2, 3, 4, 4}};
    for (const auto& dims : profiles) {
        const EnsembleConfig cfg(dims);
        for (double r : linspace(0.1, 5.0, 15)) {
            const Complex z(r, 0.0);
            worst = std::max(
                worst, rel_dev(weight::weight_meijer(z, cfg), weight::weight_quadrature(z, cfg)));
        }
    }
    ctx.add("A03.route-agreement", worst, 0.0, 1e-6,
            "Mellin-Barnes weight vs iterated quadrature, n in {2,3}, nu profiles up to (0,1,2)");
}

// --- criterion 4: kernel trace and projection -----------------------------
void check_a04(Ctx& ctx) {
    double worst_trace = 0.0;
    const std::vector<std::vector<int>> configs = {
        {2, 2}, {4, 4}, {2, 2, 2}, {4, 4, 5}, {4, 4, 4}};
    for (const auto& dims : configs) {
        const EnsembleConfig cfg(dims);
        const double trace = radial_integral(
            [&](double r) {
                if (r <= 0.0) return 0.0;
                const Complex z(r, 0.0);
                return 2.0 * kPi * r * kernel::kernel_finite(z, z, cfg).value.real();
            },
            1e-7);
        worst_trace = std::max(worst_trace, rel_dev(trace, cfg.matrix_size()));
    }
    ctx.add("A04a.kernel-trace", worst_trace, 0.0, 1e-4,
            "2pi Int r K(r,r) dr vs N for n in {1,2}, N <= 4");

    const EnsembleConfig cfg = EnsembleConfig::square(1, 4);
    mcsim::SplitMix64 rng({4, 0});
    double worst_proj = 0.0;
    for (int pair = 0; pair < 5; ++pair) {
        const Complex z = std::polar(1.5 * rng.uniform01() + 0.1, 2.0 * kPi * rng.uniform01());
        const Complex u = std::polar(1.5 * rng.uniform01() + 0.1, 2.0 * kPi * rng.uniform01());
        auto component = [&](bool imag_part) {
            return radial_integral(
                [&](double rw) {
                    if (rw <= 0.0) return 0.0;
                    quad::Options inner;
                    inner.rel_tol = 1e-9;
                    inner.abs_tol = 1e-14;
                    const auto th = quad::integrate(
                        [&](double theta) {
                            const Complex w = std::polar(rw, theta);
                            const Complex prod = kernel::kernel_finite(z, w, cfg).value *
                                                 kernel::kernel_finite(w, u, cfg).value;
                            return imag_part ? prod.imag() : prod.real();
                        },
                        0.0, 2.0 * kPi, inner);
                    return rw * th.value;
                },
                1e-7);
        };
        const Complex proj(component(false), component(true));
        const Complex direct = kernel::kernel_finite(z, u, cfg).value;
        worst_proj = std::max(worst_proj, std::abs(proj - direct) / std::abs(direct));
    }
    ctx.add("A04b.kernel-projection", worst_proj, 0.0, 1e-4,
            "Int K(z,w)K(w,u) d2w vs K(z,u), n=1 N=4, 5 seeded pairs");
}

// --- criterion 5: N-independence for n=1 ----------------------------------
void check_a05(Ctx& ctx) {
    double worst = 0.0;
    for (int N : {2, 5, 10}) {
        const kernel::FiniteDensity rho(EnsembleConfig::square(1, N));
        for (double r : linspace(0.0, 4.0, 41)) {
            const double exact = 1.0 / (kPi * (1.0 + r * r) * (1.0 + r * r));
            worst = std::max(worst, std::abs(rho(Complex(r, 0.0)) - exact));
        }
    }
    ctx.add("A05.density-N-independence", worst, 0.0, 1e-10,
            "sup |rho_{1,N} - 1/(pi(1+r^2)^2)| over r in [0,4], N in {2,5,10}");
}

// --- criterion 6: macroscopic Mellin --------------------------------------
void check_a06(Ctx& ctx) {
    const EnsembleConfig cfg = EnsembleConfig::square(2, 50);
    const kernel::FiniteDensity rho(cfg);
    const double s = 0.2;
    const double integral = radial_integral(
        [&](double r) {
            if (r <= 0.0) return 0.0;
            return std::pow(r, 2.0 * s) * 2.0 * kPi * r * rho(Complex(r, 0.0));
        },
        1e-6);
    const double macro = kPi * 2.0 * s / std::sin(kPi * 2.0 * s);  // pi*n*s/sin(pi*n*s), n=2
    ctx.add("A06a.fractional-moment-n2-N50", rel_dev(integral, macro), 0.0, 0.02,
            "Int |z|^{0.4} rho_{2,50} d2z vs pi*n*s/sin(pi*n*s)");

    double worst = 0.0;
    for (int n : {1, 2, 3}) {
        std::vector<double> lambdas(n, 0.0);
        for (double sv : {0.1, 0.2, 0.4 / n}) {
            const double got = kernel::macroscopic_mellin(sv, lambdas);
            const double ref = kPi * n * sv / std::sin(kPi * n * sv);
            worst = std::max(worst, rel_dev(got, ref));
        }
    }
    ctx.add("A06b.macroscopic-mellin-beta", worst, 0.0, 1e-8,
            "macroscopic_mellin vs Beta closed form pi*n*s/sin(pi*n*s)");
}

// --- criterion 7: saddle asymptotics --------------------------------------
void check_a07(Ctx& ctx) {
    const Complex z(1.0, 0.0);
    auto ratio = [&](int N) {
        const EnsembleConfig cfg = EnsembleConfig::square(2, N);
        return weight::weight_quadrature(z, cfg, 1e-10) / weight::weight_saddle_asymptotic(z, cfg);
    };
    const double r30 = ratio(30), r60 = ratio(60);
    ctx.add("A07a.saddle-ratio-N60", std::abs(r60 - 1.0), 0.0, 0.03,
            "weight_quadrature / weight_saddle_asymptotic at n=2, nu=0, |z|=1, N=60");
    ctx.add("A07b.saddle-monotone", std::abs(r60 - 1.0) / std::abs(r30 - 1.0), 0.0, 1.0,
            "|ratio-1| at N=60 over N=30; < 1 means the asymptotic tightens with N");
}

// --- criterion 8: origin limit ---------------------------------------------
void check_a08(Ctx& ctx) {
    double worst_scaling = 0.0;
    const int N = 200;
    for (int nu2 : {0, 1}) {
        const EnsembleConfig cfg(std::vector<int>{N, N + nu2, N + nu2});
        const double scale = std::pow(static_cast<double>(N), cfg.alpha());
        for (double ax : {0.25, 0.5, 1.0, 1.5, 2.0}) {
            const Complex xi(ax, 0.0);
            const double lhs =
                scale * weight::weight_quadrature(xi / static_cast<double>(N), cfg, 1e-10);
            const double ref = weight::weight_origin_limit(xi, cfg);
            worst_scaling = std::max(worst_scaling, rel_dev(lhs, ref));
        }
    }
    ctx.add("A08a.origin-scaling", worst_scaling, 0.0, 0.02,
            "N^alpha weight(xi/N^{n/2}) vs W_n(xi), n=2, nu2 in {0,1}, N=200, |xi| <= 2");

    const Complex pts[5] = {{0.4, 0.0}, {0.9, 0.3}, {1.5, -0.7}, {0.0, 2.0}, {1.2, 1.2}};
    double worst_routes = 0.0;
    for (int nu2 : {0, 1, 2}) {
        const EnsembleConfig cfg(std::vector<int>{2, 2 + nu2, 2 + nu2});
        for (const Complex& xi : pts)
            for (const Complex& xj : pts) {
                const Complex a = kernel::kernel_origin_limit(xi, xj, cfg);
                const Complex b = kernel::kernel_origin_bessel_n2(xi, xj, nu2);
                worst_routes = std::max(worst_routes, std::abs(a - b) / std::abs(b));
            }
    }
    ctx.add("A08b.origin-bessel-route", worst_routes, 0.0, 1e-8,
            "generic psi-quadrature origin kernel vs Bessel-K route, nu2 in {0,1,2}");

    const EnsembleConfig g1 = EnsembleConfig::square(1, 5);
    const Complex gp[4] = {{0.3, 0.0}, {0.0, 0.7}, {1.0, 0.5}, {-0.8, 0.2}};
    double worst_gin = 0.0;
    for (const Complex& xi : gp)
        for (const Complex& xj : gp) {
            const Complex a = kernel::kernel_origin_limit(xi, xj, g1);
            const Complex b = kernel::ginibre_kernel(xi, xj);
            worst_gin = std::max(worst_gin, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
    ctx.add("A08c.origin-n1-ginibre", worst_gin, 0.0, 1e-12,
            "n=1 origin kernel vs Ginibre kernel");
}

// --- criterion 9: bulk universality (normalization-free) ------------------
void check_a09(Ctx& ctx) {
    const EnsembleConfig cfg = EnsembleConfig::square(2, 100);
    const std::vector<std::pair<Complex, Complex>> pairs = {
        {{1.2, 0.0}, {1.5, 0.0}},
        {{1.0, 0.0}, {2.0, 0.0}},
        {{1.0, 0.0}, {3.0, 0.0}},
        {{1.5, 0.0}, {1.8, 0.0}},
        {{1.5, 0.0}, std::polar(1.5, 0.21)},
        {{1.5, 0.0}, std::polar(1.5, 2.0 / 3.0)},
        {{1.5, 0.0}, {3.0, 0.0}},
        {{2.0, 0.0}, std::polar(2.0, 1.0)},
        {{1.0, 1.0}, {1.0, 1.8}},
        {std::polar(3.0, 0.0), std::polar(3.0, 2.0 / 3.0)}};
    double worst = 0.0;
    for (const auto& [xi1, xi2] : pairs) {
        const Complex z1 = kernel::bulk_rescale(xi1, cfg).z;
        const Complex z2 = kernel::bulk_rescale(xi2, cfg).z;
        const auto k12 = kernel::kernel_finite(z1, z2, cfg, kernel::WeightRoute::meijer);
        const auto k11 = kernel::kernel_finite(z1, z1, cfg, kernel::WeightRoute::meijer);
        const auto k22 = kernel::kernel_finite(z2, z2, cfg, kernel::WeightRoute::meijer);
        const double lhs =
            1.0 - std::norm(k12.value) / (k11.value.real() * k22.value.real());
        const double rhs = -std::expm1(-std::norm(xi1 - xi2));
        worst = std::max(worst, rel_dev(lhs, rhs));
    }
    ctx.add("A09.bulk-universality", worst, 0.0, 0.05,
            "rho2/(rho1 rho1) from kernel_finite under bulk_rescale vs 1-exp(-|dxi|^2), "
            "n=2 nu=0 N=100, |xi| in [1,3], |dxi| in [0.3,2.5]");
}

// --- criterion 10: Monte Carlo vs analytics -------------------------------
void check_a10(Ctx& ctx) {
    const auto batch1 =
        mcsim::product_eigenvalues(EnsembleConfig::square(1, 16), 500, ctx.cfg.mc.seed,
                                   ctx.threads);
    const double ks = mcsim::ks_statistic(
        batch1, [](double r) { return r * r / (1.0 + r * r); });
    ctx.add("A10a.mc-radial-ks", ks, 0.0, 0.02,
            "KS of 8000 sampled radii vs F(r) = r^2/(1+r^2), n=1 N=16, 500 matrices");

    const EnsembleConfig cfg2 = EnsembleConfig::square(2, 8);
    const auto batch2 = mcsim::product_eigenvalues(cfg2, 500, ctx.cfg.mc.seed, ctx.threads);
    const auto est = mcsim::fractional_moment(batch2, 0.2);
    const kernel::FiniteDensity rho(cfg2);
    const double ref = radial_integral(
        [&](double r) {
            if (r <= 0.0) return 0.0;
            return std::pow(r, 0.4) * 2.0 * kPi * r * rho(Complex(r, 0.0));
        },
        1e-7);
    const double zscore = std::abs(est.estimate - ref) / est.std_error;
    std::ostringstream prov;
    prov << "fractional moment s=0.2, n=2 N=8: mc " << est.estimate << " +- " << est.std_error
         << " vs finite-N analytic " << ref << " (z-score)";
    ctx.add("A10b.mc-fractional-moment", zscore, 0.0, 3.0, prov.str());

    ctx.add("A10c.mc-phase-uniformity", mcsim::phase_uniformity_ks(batch1), 0.0, 0.02,
            "KS of eigenvalue phases vs uniform(-pi,pi], 8000 samples");
}

// --- criterion 11: DPP positivity and determinism -------------------------
void check_a11_dets(Ctx& ctx) {
    mcsim::SplitMix64 rng({11, 0});
    double min_det = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const bool square_n1 = trial % 2 == 0;
        const EnsembleConfig cfg = square_n1 ? EnsembleConfig::square(1, 4)
                                             : EnsembleConfig(std::vector<int>{4, 5, 5});
        const int k = 1 + trial % 4;
        std::vector<Complex> pts(k);
        for (int i = 0; i < k; ++i)
            pts[i] = std::polar(2.0 * std::sqrt(rng.uniform01()), 2.0 * kPi * rng.uniform01());
        const double det = kernel::correlation_det(
            pts, [&](Complex a, Complex b) { return kernel::kernel_finite(a, b, cfg).value; });
        min_det = std::min(min_det, det);
    }
    ctx.add("A11a.dpp-positivity", std::min(0.0, min_det), 0.0, 1e-10,
            "min of 200 seeded correlation determinants, k <= 4, n in {1,2}");
}

void check_a11_threads(Ctx& ctx) {
    const EnsembleConfig cfg = EnsembleConfig::square(2, 4);
    const auto a = mcsim::product_eigenvalues(cfg, 64, ctx.cfg.mc.seed, 1);
    const auto b = mcsim::product_eigenvalues(cfg, 64, ctx.cfg.mc.seed, 4);
    double mismatches = a.eigenvalues.size() == b.eigenvalues.size() ? 0.0 : 1.0;
    if (mismatches == 0.0 &&
        std::memcmp(a.eigenvalues.data(), b.eigenvalues.data(),
                    a.eigenvalues.size() * sizeof(Complex)) != 0)
        mismatches = 1.0;
    std::ostringstream csv_a, csv_b;
    mcsim::write_batch_csv(a, csv_a);
    mcsim::write_batch_csv(b, csv_b);
    if (csv_a.str() != csv_b.str()) mismatches += 1.0;
    ctx.add("A11b.thread-determinism", mismatches, 0.0, 0.0,
            "byte-identical eigenvalues and CSV across 1 and 4 worker threads");
}

// --- criterion 12: diagonal series growth in N ----------------------------
void check_a12(Ctx& ctx) {
    double violations = 0.0;
    double min_step = std::numeric_limits<double>::infinity();
    for (double x : {0.5, 1.0, 2.0}) {
        double prev = -std::numeric_limits<double>::infinity();
        for (int N = 4; N <= 40; ++N) {
            const auto f = kernel::kernel_series(EnsembleConfig::square(2, N), Complex(x, 0.0));
            const double logf = std::log(std::abs(f.mantissa)) + f.log_scale;
            if (N > 4) {
                min_step = std::min(min_step, logf - prev);
                if (logf <= prev) violations += 1.0;
            }
            prev = logf;
        }
    }
    std::ostringstream prov;
    prov << "f_{2,N}(x) strictly increasing in N for x in {0.5,1,2}, N=4..40; min log-step "
         << min_step;
    ctx.add("A12.series-growth", violations, 0.0, 0.0, prov.str());
}

}  // namespace

std::vector<VerificationReport> run_verification(const RunConfig& cfg, Suite suite,
                                                 int threads) {
    Ctx ctx{cfg, threads < 1 ? 1 : threads, {}};
    const bool all = suite == Suite::all;
    if (all || suite == Suite::weights) {
        check_a01(ctx);
        check_a02(ctx);
        check_a03(ctx);
        check_a07(ctx);
    }
    if (all || suite == Suite::kernels) {
        check_a04(ctx);
        check_a05(ctx);
        check_a11_dets(ctx);
        check_a12(ctx);
    }
    if (all || suite == Suite::limits) {
        check_a06(ctx);
        check_a08(ctx);
        check_a09(ctx);
    }
    if (all || suite == Suite::mc) {
        check_a10(ctx);
        check_a11_threads(ctx);
    }
    return ctx.reports;
}

}  // namespace prodcauchy::harness
