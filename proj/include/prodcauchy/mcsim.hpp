#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "prodcauchy/ensemble.hpp"

// Monte-Carlo sampling of products of Cauchy-Lorentz matrices (spherical
// ensemble factors A^{-1}B), complex eigenvalue extraction, and the empirical
// statistics compared against the analytic modules.

namespace prodcauchy::mcsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// (seed, stream_id) fully determines the sample sequence; distinct
/// stream_ids give statistically independent streams.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// splitmix64 generator; the stream state is derived by scrambling seed and
/// stream_id through the splitmix finalizer.
class SplitMix64 {
public:
    explicit SplitMix64(RngStream stream);

    std::uint64_t next_u64();
    double uniform01();           // in [0, 1)
    Complex complex_gaussian();   // E z = 0, E|z|^2 = 1 (re/im variance 1/2)

private:
    std::uint64_t state_;
};

/// rows x cols matrix of independent standard complex Gaussians.
ComplexMatrix sample_ginibre(int rows, int cols, SplitMix64& rng);
ComplexMatrix sample_ginibre(int rows, int cols, RngStream stream);

/// One spherical-ensemble factor X = A^{-1} B with A, B independent Ginibre;
/// A is resampled (counted in *resamples) while its condition estimate
/// exceeds 1e12. Throws after 10 consecutive resamples.
ComplexMatrix sample_cauchy_matrix(int N, SplitMix64& rng, int* resamples = nullptr);
ComplexMatrix sample_cauchy_matrix(int N, RngStream stream, int* resamples = nullptr);

struct EigenSampleBatch {
    EnsembleConfig cfg;
    std::vector<Complex> eigenvalues;  // matrices_sampled * N, replica-major
    int matrices_sampled = 0;
    std::uint64_t seed = 0;
    int resample_count = 0;
    int discarded_replicas = 0;
    std::string timestamp;  // generation time, ISO-8601 UTC

    int matrix_index(std::size_t eigenvalue_index) const {
        return static_cast<int>(eigenvalue_index) / cfg.matrix_size();
    }
};

/// Draws `matrices` replicas of the n-fold product (square case only,
/// N <= 64), appending all N eigenvalues per replica. Replica i uses
/// stream_id = i; merging is by replica index, so the result is independent
/// of `threads`.
EigenSampleBatch product_eigenvalues(const EnsembleConfig& cfg, int matrices,
                                     std::uint64_t seed, int threads = 1);

struct MomentEstimate {
    double estimate = 0.0;
    double std_error = 0.0;       // cluster-robust (clustered by source matrix)
    double std_error_iid = 0.0;   // naive i.i.d. standard error, for comparison
};

/// Sample mean of |z|^{2s} over the batch, 0 < s < 1/n.
MomentEstimate fractional_moment(const EigenSampleBatch& batch, double s);

/// Annulus histogram normalized to an area density; the profile radii are the
/// annulus midpoints.
RadialProfile radial_histogram(const EigenSampleBatch& batch, std::span<const double> grid);

/// Empirical CDF of |z| sampled on the grid.
RadialProfile empirical_cdf(const EigenSampleBatch& batch, std::span<const double> grid);

/// Sup-norm distance between two CDF profiles on the first profile's grid;
/// the second is linearly interpolated onto it (its grid must cover).
double ks_distance(const RadialProfile& empirical, const RadialProfile& analytic);

/// Exact two-sided KS statistic of the batch radii against an analytic radial
/// CDF F(r).
double ks_statistic(const EigenSampleBatch& batch, const std::function<double(double)>& cdf);

/// Exact two-sided KS statistic of the eigenvalue phases against the uniform
/// law on (-pi, pi].
double phase_uniformity_ks(const EigenSampleBatch& batch);

/// CSV columns re, im, matrix_index (17 significant digits).
void write_batch_csv(const EigenSampleBatch& batch, std::ostream& out);
/// JSON metadata sidecar: seed, dims, counts, timestamp.
void write_batch_meta(const EigenSampleBatch& batch, std::ostream& out);

}  // namespace prodcauchy::mcsim
