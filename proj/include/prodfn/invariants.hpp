#pragma once

#include <span>
#include <string>
#include <vector>

#include "prodfn/core.hpp"

namespace prodfn {

/// Y L^(-b3/b1) is constant along trajectories. Requires b1 != 0.
PowerLaw fundamental_invariant_L(const ExponentialModel &model);

/// Y K^(-b3/b2) is constant along trajectories. Requires b2 != 0.
PowerLaw fundamental_invariant_K(const ExponentialModel &model);

/// Member of the one-parameter Cobb-Douglas family of invariants:
/// beta = b3/b2 - alpha b1/b2, with A pinned by the trajectory at t = 0.
CobbDouglas cobb_douglas_member(const ExponentialModel &model, double alpha);

struct CrsElasticities {
    double alpha;
    double beta;
    std::vector<std::string> warnings;

    /// True when b3 lies strictly between b1 and b2, i.e. alpha in (0,1).
    [[nodiscard]] bool is_share() const noexcept { return warnings.empty(); }
};

/// Constant-returns member of the Cobb-Douglas family:
/// alpha = (b3-b2)/(b1-b2), beta = (b3-b1)/(b2-b1). Requires b1 != b2.
CrsElasticities crs_elasticities(const ExponentialModel &model);

/// Additive recombination of the two fundamental invariants:
/// Y = [alpha Y0^(1/b3) K0^(-1/b2) K^(1/b2) + (1-alpha) Y0^(1/b3) L0^(-1/b1) L^(1/b1)]^b3.
GeneralizedCES ces_like_member(const ExponentialModel &model, double alpha);

struct CesReduction {
    CES function;
    std::vector<std::string> warnings;
};

/// Textbook CES obtained from the generalized family when labor and capital
/// grow at the same rate and all initial values coincide. Equality is tested
/// with relative tolerance `tol` on the rates and absolute `tol` on the logs.
CesReduction ces_reduction(const ExponentialModel &model, double alpha, double tol);

/// Largest relative deviation of `fn` from the model's output along the
/// trajectory. Power laws are measured by the drift of their invariant
/// combination Y X^(-exponent) from its value at t = 0.
double constancy_check(const ProductionFunction &fn, const ExponentialModel &model,
                       std::span<const double> t_grid);

/// Per-time deviation used by constancy_check.
double relative_deviation(const ProductionFunction &fn, const ExponentialModel &model,
                          double t);

/// Relative difference between the two ends of the multiplicative chain that
/// rebuilds the Cobb-Douglas member from the power-law invariants
///     C K^(b3/b2) (B^alpha L^(alpha b3/b1) / (C^alpha K^(alpha b3/b2)))^(b1/b3)
/// and
///     A L^alpha K^(b3/b2 - alpha b1/b2),
/// evaluated at (L, K).
double identity_chain_check(const ExponentialModel &model, double alpha, double L, double K);

/// Uniform grid start, start+step, ... up to stop (inclusive within 1e-9 step).
std::vector<double> make_grid(double start, double stop, double step);

}  // namespace prodfn
