#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace prodcauchy {

/// Parameters of a product of n independent factors with dimensions
/// N_1 <= N_2 <= ... <= N_{n+1}. Derived quantities: N = N_1,
/// nu_i = N_i - N_1 (i = 1..n, nu_1 = 0) and alpha = sum_i nu_i.
class EnsembleConfig {
public:
    /// dims = {N_1, ..., N_{n+1}}; throws std::domain_error unless the list
    /// has at least two entries, is non-decreasing and strictly positive.
    explicit EnsembleConfig(std::vector<int> dims);

    /// All-square product of n factors of size N.
    static EnsembleConfig square(int n, int N);

    int n() const { return static_cast<int>(dims_.size()) - 1; }
    int matrix_size() const { return dims_[0]; }  // N
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<int>& nu() const { return nu_; }
    int alpha() const { return alpha_; }
    bool is_square() const;

    bool operator==(const EnsembleConfig&) const = default;

private:
    std::vector<int> dims_;
    std::vector<int> nu_;
    int alpha_ = 0;
};

/// A sampled radial function: strictly increasing radii >= 0 with one value
/// per node. The tag records what the values mean.
struct RadialProfile {
    enum class Kind { weight, density, cdf };

    std::vector<double> radii;
    std::vector<double> values;
    Kind kind = Kind::density;

    void validate() const;  // throws std::domain_error on invariant violations
};

/// Cumulative trapezoidal integral of 2*pi*r*density(r). The final value is
/// the computed mass; it is not forced to 1 (the gap from 1 is a diagnostic).
/// Requires a density profile whose grid starts at r = 0.
RadialProfile radial_cdf(const RadialProfile& density);

}  // namespace prodcauchy
