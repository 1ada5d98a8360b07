#include "prodcauchy/ensemble.hpp"

#include <cmath>
#include <numbers>

namespace prodcauchy {

EnsembleConfig::EnsembleConfig(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.size() < 2)
        throw std::domain_error("EnsembleConfig: need n+1 >= 2 dimensions");
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] < 1) throw std::domain_error("EnsembleConfig: dimensions must be >= 1");
        if (i > 0 && dims_[i] < dims_[i - 1])
            throw std::domain_error("EnsembleConfig: dimensions must be non-decreasing");
    }
    nu_.resize(dims_.size() - 1);
    for (std::size_t i = 0; i + 1 < dims_.size(); ++i) {
        nu_[i] = dims_[i] - dims_[0];
        alpha_ += nu_[i];
    }
}

EnsembleConfig EnsembleConfig::square(int n, int N) {
    if (n < 1) throw std::domain_error("EnsembleConfig: n must be >= 1");
    return EnsembleConfig(std::vector<int>(static_cast<std::size_t>(n) + 1, N));
}

bool EnsembleConfig::is_square() const {
    for (int d : dims_)
        if (d != dims_[0]) return false;
    return true;
}

void RadialProfile::validate() const {
    if (radii.size() != values.size())
        throw std::domain_error("RadialProfile: radii/values length mismatch");
    if (radii.empty()) throw std::domain_error("RadialProfile: empty profile");
    double prev = -1.0;
    for (double r : radii) {
        if (!(r >= 0.0) || r <= prev)
            throw std::domain_error("RadialProfile: radii must be strictly increasing and >= 0");
        prev = r;
    }
    if (kind == Kind::weight || kind == Kind::density) {
        for (double v : values)
            if (v < 0.0) throw std::domain_error("RadialProfile: negative weight/density value");
    } else {
        double last = 0.0;
        for (double v : values) {
            if (v + 1e-12 < last) throw std::domain_error("RadialProfile: cdf must be non-decreasing");
            last = std::max(last, v);
        }
        if (values.back() > 1.0 + 1e-9)
            throw std::domain_error("RadialProfile: cdf exceeds 1 beyond tolerance");
    }
}

RadialProfile radial_cdf(const RadialProfile& density) {
    density.validate();
    if (density.kind != RadialProfile::Kind::density)
        throw std::domain_error("radial_cdf: input must be a density profile");
    if (density.radii.front() != 0.0)
        throw std::domain_error("radial_cdf: density grid must start at r = 0");
    RadialProfile cdf;
    cdf.kind = RadialProfile::Kind::cdf;
    cdf.radii = density.radii;
    cdf.values.resize(density.values.size());
    const double two_pi = 2.0 * std::numbers::pi;
    double acc = 0.0;
    cdf.values[0] = 0.0;
    for (std::size_t i = 1; i < density.radii.size(); ++i) {
        const double f0 = two_pi * density.radii[i - 1] * density.values[i - 1];
        const double f1 = two_pi * density.radii[i] * density.values[i];
        acc += 0.5 * (f0 + f1) * (density.radii[i] - density.radii[i - 1]);
        cdf.values[i] = acc;
    }
    return cdf;
}

}  // namespace prodcauchy
