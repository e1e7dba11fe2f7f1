#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "prodfn/error.hpp"

namespace prodfn {

/**
 * Parameters of the diagonal linear growth system
 *
 *     dL/dt = b1 L,   dK/dt = b2 K,   dY/dt = b3 Y
 *
 * together with the logs of the initial values at t = 0. Time is counted in
 * years from `base_year`, which only labels the origin.
 */
class ExponentialModel {
public:
    /// Throws Error(domain) unless all six parameters are finite.
    ExponentialModel(double b1, double b2, double b3,
                     double ln_L0, double ln_K0, double ln_Y0,
                     int base_year = 0);

    [[nodiscard]] double b1() const noexcept { return b1_; }
    [[nodiscard]] double b2() const noexcept { return b2_; }
    [[nodiscard]] double b3() const noexcept { return b3_; }
    [[nodiscard]] double ln_L0() const noexcept { return ln_L0_; }
    [[nodiscard]] double ln_K0() const noexcept { return ln_K0_; }
    [[nodiscard]] double ln_Y0() const noexcept { return ln_Y0_; }
    [[nodiscard]] int base_year() const noexcept { return base_year_; }

    bool operator==(const ExponentialModel &) const = default;

private:
    double b1_, b2_, b3_;
    double ln_L0_, ln_K0_, ln_Y0_;
    int base_year_;
};

struct FactorLevels {
    double L;
    double K;
    double Y;
};

/// Closed-form trajectory at time t. Throws Error(overflow) naming the
/// variable if a level is not representable.
FactorLevels trajectory(const ExponentialModel &model, double t);

/// Logs of the trajectory levels; never overflows for finite t.
FactorLevels log_trajectory(const ExponentialModel &model, double t) noexcept;

enum class Input { labor, capital };

std::string_view to_string(Input input) noexcept;

// Multiplicative constants are held as logs so that members of the
// generalized families with extreme exponents (1/b for small b) stay
// representable. The plain accessors exponentiate on demand.

/// Y = coeff * X^exponent where X is the designated input.
class PowerLaw {
public:
    static PowerLaw from_log(double ln_coeff, double exponent, Input input);
    PowerLaw(double coeff, double exponent, Input input);

    [[nodiscard]] double coeff() const noexcept;
    [[nodiscard]] double ln_coeff() const noexcept { return ln_coeff_; }
    [[nodiscard]] double exponent() const noexcept { return exponent_; }
    [[nodiscard]] Input input() const noexcept { return input_; }

    bool operator==(const PowerLaw &) const = default;

private:
    PowerLaw() = default;
    double ln_coeff_ = 0.0;
    double exponent_ = 0.0;
    Input input_ = Input::labor;
};

/// Y = A L^alpha K^beta with alpha in (0,1). beta is free.
class CobbDouglas {
public:
    static CobbDouglas from_log(double ln_A, double alpha, double beta);
    CobbDouglas(double A, double alpha, double beta);

    [[nodiscard]] double A() const noexcept;
    [[nodiscard]] double ln_A() const noexcept { return ln_A_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }

    bool operator==(const CobbDouglas &) const = default;

private:
    CobbDouglas() = default;
    double ln_A_ = 0.0;
    double alpha_ = 0.5;
    double beta_ = 0.5;
};

/// Y = (cK K^eK + cL L^eL)^outer, the additive recombination of the two
/// power-law invariants. alpha is the share that produced cK and cL.
class GeneralizedCES {
public:
    static GeneralizedCES from_log(double ln_cK, double ln_cL, double alpha,
                                   double eK, double eL, double outer);
    GeneralizedCES(double cK, double cL, double alpha,
                   double eK, double eL, double outer);

    [[nodiscard]] double cK() const noexcept;
    [[nodiscard]] double cL() const noexcept;
    [[nodiscard]] double ln_cK() const noexcept { return ln_cK_; }
    [[nodiscard]] double ln_cL() const noexcept { return ln_cL_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double eK() const noexcept { return eK_; }
    [[nodiscard]] double eL() const noexcept { return eL_; }
    [[nodiscard]] double outer() const noexcept { return outer_; }

    bool operator==(const GeneralizedCES &) const = default;

private:
    GeneralizedCES() = default;
    double ln_cK_ = 0.0, ln_cL_ = 0.0;
    double alpha_ = 0.5;
    double eK_ = 1.0, eL_ = 1.0, outer_ = 1.0;
};

/// Y = A [alpha K^p + (1 - alpha) L^p]^(v/p), p != 0.
class CES {
public:
    static CES from_log(double ln_A, double alpha, double p, double v);
    CES(double A, double alpha, double p, double v);

    [[nodiscard]] double A() const noexcept;
    [[nodiscard]] double ln_A() const noexcept { return ln_A_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double p() const noexcept { return p_; }
    [[nodiscard]] double v() const noexcept { return v_; }

    /// Elasticity of substitution 1/(1-p); absent at p = 1.
    [[nodiscard]] std::optional<double> sigma() const noexcept;

    bool operator==(const CES &) const = default;

private:
    CES() = default;
    double ln_A_ = 0.0;
    double alpha_ = 0.5;
    double p_ = 1.0, v_ = 1.0;
};

using ProductionFunction = std::variant<PowerLaw, CobbDouglas, GeneralizedCES, CES>;

std::string_view kind_name(const ProductionFunction &fn) noexcept;

/// ln Y for the given inputs. Throws Error(domain) unless L > 0 and K > 0.
double log_evaluate(const ProductionFunction &fn, double L, double K);

/// ln Y given ln L and ln K directly; no domain check beyond finiteness.
double log_evaluate_at_logs(const ProductionFunction &fn, double ln_L, double ln_K) noexcept;

/// Y for the given inputs. Throws Error(domain) for non-positive inputs and
/// Error(overflow) if Y is not representable.
double evaluate(const ProductionFunction &fn, double L, double K);

/// ln(e^a + e^b) without intermediate overflow.
double log_add_exp(double a, double b) noexcept;

}  // namespace prodfn
