#include "prodfn/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prodfn/error.hpp"
#include "prodfn/numfmt.hpp"

namespace prodfn {

namespace {

void require_nonzero_rate(double rate, const char *name, const char *why) {
    if (rate == 0.0) {
        throw Error(ErrorCode::degenerate, std::string(name) + " = 0: " + why);
    }
}

void require_share(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::domain,
                    "alpha must lie strictly inside (0,1), got " + format_g17(alpha));
    }
}

bool strictly_between(double x, double a, double b) {
    return (a < x && x < b) || (b < x && x < a);
}

[[noreturn]] void not_reducible(const std::string &condition) {
    throw Error(ErrorCode::not_reducible, "model is not CES-reducible: " + condition);
}

}  // namespace

PowerLaw fundamental_invariant_L(const ExponentialModel &model) {
    require_nonzero_rate(model.b1(), "b1", "time cannot be eliminated through L");
    const double exponent = model.b3() / model.b1();
    return PowerLaw::from_log(model.ln_Y0() - exponent * model.ln_L0(), exponent, Input::labor);
}

PowerLaw fundamental_invariant_K(const ExponentialModel &model) {
    require_nonzero_rate(model.b2(), "b2", "time cannot be eliminated through K");
    const double exponent = model.b3() / model.b2();
    return PowerLaw::from_log(model.ln_Y0() - exponent * model.ln_K0(), exponent,
                              Input::capital);
}

CobbDouglas cobb_douglas_member(const ExponentialModel &model, double alpha) {
    require_nonzero_rate(model.b2(), "b2", "the capital exponent b3/b2 - alpha b1/b2 is undefined");
    require_share(alpha);
    const double beta = model.b3() / model.b2() - alpha * model.b1() / model.b2();
    const double ln_A = model.ln_Y0() - alpha * model.ln_L0() - beta * model.ln_K0();
    return CobbDouglas::from_log(ln_A, alpha, beta);
}

CrsElasticities crs_elasticities(const ExponentialModel &model) {
    const double b1 = model.b1(), b2 = model.b2(), b3 = model.b3();
    if (b1 == b2) {
        throw Error(ErrorCode::degenerate,
                    "b1 = b2: constant-returns elasticities are singular");
    }
    CrsElasticities out{(b3 - b2) / (b1 - b2), (b3 - b1) / (b2 - b1), {}};
    if (!strictly_between(b3, b1, b2)) {
        out.warnings.push_back("b3 is not strictly between b1 and b2; alpha = " +
                               format_g17(out.alpha) + " is outside (0,1)");
    }
    return out;
}

GeneralizedCES ces_like_member(const ExponentialModel &model, double alpha) {
    require_nonzero_rate(model.b1(), "b1", "exponent 1/b1 is undefined");
    require_nonzero_rate(model.b2(), "b2", "exponent 1/b2 is undefined");
    require_nonzero_rate(model.b3(), "b3", "exponent 1/b3 is undefined");
    require_share(alpha);
    const double ln_y_scale = model.ln_Y0() / model.b3();
    const double ln_cK = std::log(alpha) + ln_y_scale - model.ln_K0() / model.b2();
    const double ln_cL = std::log1p(-alpha) + ln_y_scale - model.ln_L0() / model.b1();
    return GeneralizedCES::from_log(ln_cK, ln_cL, alpha, 1.0 / model.b2(), 1.0 / model.b1(),
                                    model.b3());
}

CesReduction ces_reduction(const ExponentialModel &model, double alpha, double tol) {
    require_share(alpha);
    if (!(tol >= 0.0) || !std::isfinite(tol)) {
        throw Error(ErrorCode::domain, "tolerance must be finite and non-negative, got " +
                                           format_g17(tol));
    }
    const double b1 = model.b1(), b2 = model.b2();
    if (std::abs(b1 - b2) > tol * std::max(std::abs(b1), std::abs(b2))) {
        not_reducible("b1 = " + format_g17(b1) + " and b2 = " + format_g17(b2) +
                      " differ beyond relative tolerance " + format_g17(tol));
    }
    const double b = 0.5 * (b1 + b2);
    if (b == 0.0) not_reducible("b1 = b2 = 0, substitution parameter 1/b1 is undefined");
    if (std::abs(model.ln_L0() - model.ln_K0()) > tol) {
        not_reducible("ln L0 and ln K0 differ by more than " + format_g17(tol));
    }
    if (std::abs(model.ln_L0() - model.ln_Y0()) > tol) {
        not_reducible("ln L0 and ln Y0 differ by more than " + format_g17(tol));
    }

    const double ln_c = (model.ln_L0() + model.ln_K0() + model.ln_Y0()) / 3.0;
    const double p = 1.0 / b;
    const double v = model.b3() / b;
    CesReduction out{CES::from_log((1.0 - v) * ln_c, alpha, p, v), {}};
    if (p >= 1.0) {
        out.warnings.push_back("p = " + format_g17(p) +
                               " >= 1: elasticity of substitution 1/(1-p) is " +
                               (p == 1.0 ? std::string("undefined") : "negative"));
    }
    return out;
}

double relative_deviation(const ProductionFunction &fn, const ExponentialModel &model,
                          double t) {
    const auto at = log_trajectory(model, t);
    if (const auto *power = std::get_if<PowerLaw>(&fn)) {
        const auto at0 = log_trajectory(model, 0.0);
        const auto combination = [&](const FactorLevels &logs) {
            const double ln_x = power->input() == Input::labor ? logs.L : logs.K;
            return logs.Y - power->exponent() * ln_x;
        };
        return std::abs(std::expm1(combination(at) - combination(at0)));
    }
    return std::abs(std::expm1(log_evaluate_at_logs(fn, at.L, at.K) - at.Y));
}

double constancy_check(const ProductionFunction &fn, const ExponentialModel &model,
                       std::span<const double> t_grid) {
    if (t_grid.empty()) throw Error(ErrorCode::domain, "time grid is empty");
    double worst = 0.0;
    for (const double t : t_grid) {
        const double dev = relative_deviation(fn, model, t);
        // NaN must not be hidden by max().
        if (!(dev <= worst)) worst = dev;
    }
    return worst;
}

double identity_chain_check(const ExponentialModel &model, double alpha, double L, double K) {
    const double b1 = model.b1(), b2 = model.b2(), b3 = model.b3();
    require_nonzero_rate(b1, "b1", "the chain divides by b1");
    require_nonzero_rate(b2, "b2", "the chain divides by b2");
    require_nonzero_rate(b3, "b3", "the chain raises to b1/b3");
    if (!(L > 0.0) || !(K > 0.0)) {
        throw Error(ErrorCode::domain, "L and K must be positive");
    }

    const double L0 = std::exp(model.ln_L0());
    const double K0 = std::exp(model.ln_K0());
    const double Y0 = std::exp(model.ln_Y0());

    // Constants of the two power-law invariants: Y = B L^(b3/b1), Y = C K^(b3/b2).
    const double B = Y0 / std::pow(L0, b3 / b1);
    const double C = Y0 / std::pow(K0, b3 / b2);

    const double ratio = std::pow(B, alpha) * std::pow(L, alpha * b3 / b1) /
                         (std::pow(C, alpha) * std::pow(K, alpha * b3 / b2));
    const double chain = C * std::pow(K, b3 / b2) * std::pow(ratio, b1 / b3);

    const auto member = cobb_douglas_member(model, alpha);
    const double closed = member.A() * std::pow(L, alpha) * std::pow(K, member.beta());

    const double residual = std::abs(chain - closed) / std::abs(closed);
    if (!std::isfinite(residual)) {
        throw Error(ErrorCode::overflow, "identity chain is not representable at L=" +
                                             format_g17(L) + " K=" + format_g17(K));
    }
    return residual;
}

std::vector<double> make_grid(double start, double stop, double step) {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || !(step > 0.0) ||
        stop < start) {
        throw Error(ErrorCode::domain, "grid needs finite start <= stop and step > 0, got " +
                                           format_g17(start) + ":" + format_g17(stop) + ":" +
                                           format_g17(step));
    }
    const double span = std::floor((stop - start) / step + 1e-9);
    if (span > 1e7) throw Error(ErrorCode::domain, "grid has more than 1e7 points");
    const auto count = static_cast<std::size_t>(span) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
    return grid;
}

}  // namespace prodfn
