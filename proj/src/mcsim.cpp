#include "prodcauchy/mcsim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <numbers>
#include <ostream>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <json.hpp>

namespace prodcauchy::mcsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

SplitMix64::SplitMix64(RngStream stream)
    : state_(mix64(stream.seed ^ mix64(stream.stream_id + kGolden))) {}

std::uint64_t SplitMix64::next_u64() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Complex SplitMix64::complex_gaussian() {
    // |z|^2 ~ Exp(1), phase uniform: re/im are independent N(0, 1/2).
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double rho = std::sqrt(-std::log(u1));
    return {rho * std::cos(2.0 * kPi * u2), rho * std::sin(2.0 * kPi * u2)};
}

ComplexMatrix sample_ginibre(int rows, int cols, SplitMix64& rng) {
    if (rows < 1 || cols < 1) throw std::domain_error("sample_ginibre: rows, cols >= 1");
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

ComplexMatrix sample_ginibre(int rows, int cols, RngStream stream) {
    SplitMix64 rng(stream);
    return sample_ginibre(rows, cols, rng);
}

ComplexMatrix sample_cauchy_matrix(int N, SplitMix64& rng, int* resamples) {
    if (N < 1) throw std::domain_error("sample_cauchy_matrix: N >= 1");
    for (int attempt = 0; attempt <= 10; ++attempt) {
        const ComplexMatrix a = sample_ginibre(N, N, rng);
        Eigen::PartialPivLU<ComplexMatrix> lu(a);
        if (lu.rcond() < 1e-12) {
            if (resamples) ++*resamples;
            continue;
        }
        const ComplexMatrix b = sample_ginibre(N, N, rng);
        return lu.solve(b);
    }
    throw std::runtime_error("sample_cauchy_matrix: repeated ill-conditioned factor");
}

ComplexMatrix sample_cauchy_matrix(int N, RngStream stream, int* resamples) {
    SplitMix64 rng(stream);
    return sample_cauchy_matrix(N, rng, resamples);
}

EigenSampleBatch product_eigenvalues(const EnsembleConfig& cfg, int matrices,
                                     std::uint64_t seed, int threads) {
    if (!cfg.is_square())
        throw std::domain_error("product_eigenvalues: square case only (nu_i = 0)");
    const int N = cfg.matrix_size();
    if (N > 64) throw std::domain_error("product_eigenvalues: N <= 64 supported");
    if (matrices < 1) throw std::domain_error("product_eigenvalues: matrices >= 1");
    if (threads < 1) threads = 1;

    const int n = cfg.n();
    std::vector<std::vector<Complex>> per_replica(matrices);
    std::vector<char> failed(matrices, 0);
    std::vector<int> resamples(matrices, 0);
    std::atomic<int> cursor{0};

    auto worker = [&]() {
        for (;;) {
            const int r = cursor.fetch_add(1);
            if (r >= matrices) return;
            SplitMix64 rng({seed, static_cast<std::uint64_t>(r)});
            ComplexMatrix y = sample_cauchy_matrix(N, rng, &resamples[r]);
            for (int i = 1; i < n; ++i) y = y * sample_cauchy_matrix(N, rng, &resamples[r]);
            Eigen::ComplexEigenSolver<ComplexMatrix> solver(y, false);
            if (solver.info() != Eigen::Success) {
                failed[r] = 1;
                continue;
            }
            auto& out = per_replica[r];
            out.reserve(N);
            for (int i = 0; i < N; ++i) out.push_back(solver.eigenvalues()(i));
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    EigenSampleBatch batch{cfg, {}, 0, seed, 0, 0, utc_timestamp()};
    batch.eigenvalues.reserve(static_cast<std::size_t>(matrices) * N);
    for (int r = 0; r < matrices; ++r) {
        batch.resample_count += resamples[r];
        if (failed[r]) {
            ++batch.discarded_replicas;
            continue;
        }
        batch.eigenvalues.insert(batch.eigenvalues.end(), per_replica[r].begin(),
                                 per_replica[r].end());
        ++batch.matrices_sampled;
    }
    if (batch.discarded_replicas * 100 > matrices)
        throw std::runtime_error("product_eigenvalues: eigensolver discard rate above 1%");
    for (const Complex& z : batch.eigenvalues)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::runtime_error("product_eigenvalues: non-finite eigenvalue");
    return batch;
}

MomentEstimate fractional_moment(const EigenSampleBatch& batch, double s) {
    if (batch.eigenvalues.empty())
        throw std::domain_error("fractional_moment: empty batch");
    const int n = batch.cfg.n();
    if (!(s > 0.0) || !(s < 1.0 / n))
        throw std::domain_error("fractional_moment: requires 0 < s < 1/n");
    const int N = batch.cfg.matrix_size();
    const int clusters = batch.matrices_sampled;
    const std::size_t total = batch.eigenvalues.size();

    double grand = 0.0;
    std::vector<double> cluster_mean(clusters, 0.0);
    std::vector<double> xs(total);
    for (std::size_t i = 0; i < total; ++i) {
        xs[i] = std::pow(std::norm(batch.eigenvalues[i]), s);
        grand += xs[i];
        cluster_mean[i / static_cast<std::size_t>(N)] += xs[i];
    }
    grand /= static_cast<double>(total);
    double var_cluster = 0.0;
    for (double& m : cluster_mean) {
        m /= N;
        var_cluster += (m - grand) * (m - grand);
    }
    double var_iid = 0.0;
    for (double x : xs) var_iid += (x - grand) * (x - grand);

    MomentEstimate est;
    est.estimate = grand;
    est.std_error = clusters > 1
                        ? std::sqrt(var_cluster / (static_cast<double>(clusters) * (clusters - 1)))
                        : 0.0;
    est.std_error_iid =
        total > 1 ? std::sqrt(var_iid / (static_cast<double>(total) * (total - 1.0))) : 0.0;
    return est;
}

RadialProfile radial_histogram(const EigenSampleBatch& batch, std::span<const double> grid) {
    if (grid.size() < 2) throw std::domain_error("radial_histogram: need >= 2 grid nodes");
    RadialProfile prof;
    prof.kind = RadialProfile::Kind::density;
    const std::size_t bins = grid.size() - 1;
    prof.radii.resize(bins);
    prof.values.assign(bins, 0.0);
    for (std::size_t b = 0; b < bins; ++b) {
        if (grid[b + 1] <= grid[b])
            throw std::domain_error("radial_histogram: grid must be increasing");
        prof.radii[b] = 0.5 * (grid[b] + grid[b + 1]);
    }
    for (const Complex& z : batch.eigenvalues) {
        const double r = std::abs(z);
        if (r <= grid.front() || r > grid.back()) continue;
        // bin b holds (grid[b], grid[b+1]]
        const auto it = std::lower_bound(grid.begin(), grid.end(), r);
        prof.values[static_cast<std::size_t>(it - grid.begin()) - 1] += 1.0;
    }
    const double total = static_cast<double>(batch.eigenvalues.size());
    for (std::size_t b = 0; b < bins; ++b) {
        const double area = kPi * (grid[b + 1] * grid[b + 1] - grid[b] * grid[b]);
        prof.values[b] /= total * area;
    }
    return prof;
}

RadialProfile empirical_cdf(const EigenSampleBatch& batch, std::span<const double> grid) {
    if (grid.empty()) throw std::domain_error("empirical_cdf: empty grid");
    std::vector<double> radii(batch.eigenvalues.size());
    for (std::size_t i = 0; i < radii.size(); ++i) radii[i] = std::abs(batch.eigenvalues[i]);
    std::sort(radii.begin(), radii.end());
    RadialProfile prof;
    prof.kind = RadialProfile::Kind::cdf;
    prof.radii.assign(grid.begin(), grid.end());
    prof.values.resize(grid.size());
    const double total = static_cast<double>(radii.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto it = std::upper_bound(radii.begin(), radii.end(), grid[i]);
        prof.values[i] = static_cast<double>(it - radii.begin()) / total;
    }
    prof.validate();
    return prof;
}

double ks_distance(const RadialProfile& empirical, const RadialProfile& analytic) {
    empirical.validate();
    analytic.validate();
    if (empirical.kind != RadialProfile::Kind::cdf || analytic.kind != RadialProfile::Kind::cdf)
        throw std::domain_error("ks_distance: both profiles must be CDFs");
    double d = 0.0;
    if (empirical.radii == analytic.radii) {
        for (std::size_t i = 0; i < empirical.values.size(); ++i)
            d = std::max(d, std::abs(empirical.values[i] - analytic.values[i]));
        return d;
    }
    if (empirical.radii.front() < analytic.radii.front() ||
        empirical.radii.back() > analytic.radii.back())
        throw std::domain_error("ks_distance: grids not interpolable (no coverage)");
    for (std::size_t i = 0; i < empirical.radii.size(); ++i) {
        const double r = empirical.radii[i];
        const auto it = std::lower_bound(analytic.radii.begin(), analytic.radii.end(), r);
        double v;
        if (*it == r) {
            v = analytic.values[static_cast<std::size_t>(it - analytic.radii.begin())];
        } else {
            const std::size_t hi = static_cast<std::size_t>(it - analytic.radii.begin());
            const double t =
                (r - analytic.radii[hi - 1]) / (analytic.radii[hi] - analytic.radii[hi - 1]);
            v = analytic.values[hi - 1] + t * (analytic.values[hi] - analytic.values[hi - 1]);
        }
        d = std::max(d, std::abs(empirical.values[i] - v));
    }
    return d;
}

double ks_statistic(const EigenSampleBatch& batch, const std::function<double(double)>& cdf) {
    std::vector<double> radii(batch.eigenvalues.size());
    for (std::size_t i = 0; i < radii.size(); ++i) radii[i] = std::abs(batch.eigenvalues[i]);
    std::sort(radii.begin(), radii.end());
    const double m = static_cast<double>(radii.size());
    double d = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double f = cdf(radii[i]);
        d = std::max(d, std::max((i + 1.0) / m - f, f - static_cast<double>(i) / m));
    }
    return d;
}

double phase_uniformity_ks(const EigenSampleBatch& batch) {
    std::vector<double> phases(batch.eigenvalues.size());
    for (std::size_t i = 0; i < phases.size(); ++i)
        phases[i] = std::arg(batch.eigenvalues[i]);
    std::sort(phases.begin(), phases.end());
    const double m = static_cast<double>(phases.size());
    double d = 0.0;
    for (std::size_t i = 0; i < phases.size(); ++i) {
        const double f = (phases[i] + kPi) / (2.0 * kPi);
        d = std::max(d, std::max((i + 1.0) / m - f, f - static_cast<double>(i) / m));
    }
    return d;
}

void write_batch_csv(const EigenSampleBatch& batch, std::ostream& out) {
    out << "re,im,matrix_index\n";
    for (std::size_t i = 0; i < batch.eigenvalues.size(); ++i) {
        out << num17(batch.eigenvalues[i].real()) << ',' << num17(batch.eigenvalues[i].imag())
            << ',' << batch.matrix_index(i) << '\n';
    }
}

void write_batch_meta(const EigenSampleBatch& batch, std::ostream& out) {
    nlohmann::json j;
    j["seed"] = batch.seed;
    j["n"] = batch.cfg.n();
    j["dims"] = batch.cfg.dims();
    j["matrices_sampled"] = batch.matrices_sampled;
    j["eigenvalue_count"] = batch.eigenvalues.size();
    j["resample_count"] = batch.resample_count;
    j["discarded_replicas"] = batch.discarded_replicas;
    j["timestamp"] = batch.timestamp;
    out << j.dump(2) << '\n';
}

}  // namespace prodcauchy::mcsim
