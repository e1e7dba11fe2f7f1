#pragma once

#include <cmath>
#include <random>

#include "prodfn/core.hpp"

namespace prodfn::test {

// Published growth-system fit of the 1899-1922 labor/capital/output indices.
inline ExponentialModel published_model() {
    return ExponentialModel(0.02549605, 0.06472564, 0.03592651, 4.66953290, 4.61213588,
                            4.66415363, 1899);
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    // Magnitude in [lo, hi] with random sign.
    double signed_magnitude(double lo, double hi) {
        const double m = uniform(lo, hi);
        return uniform(0.0, 1.0) < 0.5 ? -m : m;
    }
    std::mt19937_64 &engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Positive growth rates, log-initials of index-sized levels.
inline ExponentialModel random_model(Rng &rng, double rate_lo = 0.01, double rate_hi = 0.1) {
    return ExponentialModel(rng.uniform(rate_lo, rate_hi), rng.uniform(rate_lo, rate_hi),
                            rng.uniform(rate_lo, rate_hi), rng.uniform(0.0, 7.0),
                            rng.uniform(0.0, 7.0), rng.uniform(0.0, 7.0));
}

}  // namespace prodfn::test
