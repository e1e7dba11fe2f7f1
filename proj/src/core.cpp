#include "prodfn/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prodfn/numfmt.hpp"

namespace prodfn {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::data: return "data";
    case ErrorCode::parse: return "parse";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::not_reducible: return "not_reducible";
    }
    return "unknown";
}

std::string_view to_string(Input input) noexcept {
    return input == Input::labor ? "labor" : "capital";
}

namespace {

void require_finite(double value, const char *what) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::domain, std::string(what) + " must be finite, got " +
                                           format_g17(value));
    }
}

void require_share(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::domain,
                    "alpha must lie strictly inside (0,1), got " + format_g17(alpha));
    }
}

double log_of_positive(double value, const char *what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::domain, std::string(what) + " must be positive and finite, got " +
                                           format_g17(value));
    }
    return std::log(value);
}

double checked_exp(double log_value, const char *what) {
    const double value = std::exp(log_value);
    if (!std::isfinite(value) || value == 0.0) {
        throw Error(ErrorCode::overflow,
                    std::string(what) + " is not representable (log value " +
                        format_g17(log_value) + ")");
    }
    return value;
}

}  // namespace

ExponentialModel::ExponentialModel(double b1, double b2, double b3, double ln_L0,
                                   double ln_K0, double ln_Y0, int base_year)
    : b1_(b1), b2_(b2), b3_(b3), ln_L0_(ln_L0), ln_K0_(ln_K0), ln_Y0_(ln_Y0),
      base_year_(base_year) {
    require_finite(b1, "b1");
    require_finite(b2, "b2");
    require_finite(b3, "b3");
    require_finite(ln_L0, "ln_L0");
    require_finite(ln_K0, "ln_K0");
    require_finite(ln_Y0, "ln_Y0");
}

FactorLevels log_trajectory(const ExponentialModel &model, double t) noexcept {
    return {model.ln_L0() + model.b1() * t, model.ln_K0() + model.b2() * t,
            model.ln_Y0() + model.b3() * t};
}

FactorLevels trajectory(const ExponentialModel &model, double t) {
    if (!std::isfinite(t)) {
        throw Error(ErrorCode::domain, "time must be finite, got " + format_g17(t));
    }
    const auto logs = log_trajectory(model, t);
    const auto level = [t](double log_value, const char *name) {
        const double value = std::exp(log_value);
        if (!std::isfinite(value) || value == 0.0) {
            throw Error(ErrorCode::overflow, std::string(name) + "(t) at t=" + format_g17(t) +
                                                 " is outside double range");
        }
        return value;
    };
    return {level(logs.L, "L"), level(logs.K, "K"), level(logs.Y, "Y")};
}

// PowerLaw

PowerLaw PowerLaw::from_log(double ln_coeff, double exponent, Input input) {
    require_finite(ln_coeff, "ln coeff");
    require_finite(exponent, "exponent");
    PowerLaw fn;
    fn.ln_coeff_ = ln_coeff;
    fn.exponent_ = exponent;
    fn.input_ = input;
    return fn;
}

PowerLaw::PowerLaw(double coeff, double exponent, Input input)
    : PowerLaw(from_log(log_of_positive(coeff, "coeff"), exponent, input)) {}

double PowerLaw::coeff() const noexcept { return std::exp(ln_coeff_); }

// CobbDouglas

CobbDouglas CobbDouglas::from_log(double ln_A, double alpha, double beta) {
    require_finite(ln_A, "ln A");
    require_share(alpha);
    require_finite(beta, "beta");
    CobbDouglas fn;
    fn.ln_A_ = ln_A;
    fn.alpha_ = alpha;
    fn.beta_ = beta;
    return fn;
}

CobbDouglas::CobbDouglas(double A, double alpha, double beta)
    : CobbDouglas(from_log(log_of_positive(A, "A"), alpha, beta)) {}

double CobbDouglas::A() const noexcept { return std::exp(ln_A_); }

// GeneralizedCES

GeneralizedCES GeneralizedCES::from_log(double ln_cK, double ln_cL, double alpha, double eK,
                                        double eL, double outer) {
    require_finite(ln_cK, "ln cK");
    require_finite(ln_cL, "ln cL");
    require_share(alpha);
    require_finite(eK, "eK");
    require_finite(eL, "eL");
    require_finite(outer, "outer exponent");
    GeneralizedCES fn;
    fn.ln_cK_ = ln_cK;
    fn.ln_cL_ = ln_cL;
    fn.alpha_ = alpha;
    fn.eK_ = eK;
    fn.eL_ = eL;
    fn.outer_ = outer;
    return fn;
}

GeneralizedCES::GeneralizedCES(double cK, double cL, double alpha, double eK, double eL,
                               double outer)
    : GeneralizedCES(from_log(log_of_positive(cK, "cK"), log_of_positive(cL, "cL"), alpha, eK,
                              eL, outer)) {}

double GeneralizedCES::cK() const noexcept { return std::exp(ln_cK_); }
double GeneralizedCES::cL() const noexcept { return std::exp(ln_cL_); }

// CES

CES CES::from_log(double ln_A, double alpha, double p, double v) {
    require_finite(ln_A, "ln A");
    require_share(alpha);
    require_finite(p, "p");
    require_finite(v, "v");
    if (p == 0.0) {
        throw Error(ErrorCode::domain, "CES substitution parameter p must be non-zero");
    }
    CES fn;
    fn.ln_A_ = ln_A;
    fn.alpha_ = alpha;
    fn.p_ = p;
    fn.v_ = v;
    return fn;
}

CES::CES(double A, double alpha, double p, double v)
    : CES(from_log(log_of_positive(A, "A"), alpha, p, v)) {}

double CES::A() const noexcept { return std::exp(ln_A_); }

std::optional<double> CES::sigma() const noexcept {
    if (p_ == 1.0) return std::nullopt;
    return 1.0 / (1.0 - p_);
}

// Evaluation

std::string_view kind_name(const ProductionFunction &fn) noexcept {
    switch (fn.index()) {
    case 0: return "power_law";
    case 1: return "cobb_douglas";
    case 2: return "generalized_ces";
    default: return "ces";
    }
}

double log_add_exp(double a, double b) noexcept {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

namespace {

struct LogEvaluator {
    double ln_L;
    double ln_K;

    double operator()(const PowerLaw &fn) const {
        const double ln_x = fn.input() == Input::labor ? ln_L : ln_K;
        return fn.ln_coeff() + fn.exponent() * ln_x;
    }
    double operator()(const CobbDouglas &fn) const {
        return fn.ln_A() + fn.alpha() * ln_L + fn.beta() * ln_K;
    }
    double operator()(const GeneralizedCES &fn) const {
        const double k_term = fn.ln_cK() + fn.eK() * ln_K;
        const double l_term = fn.ln_cL() + fn.eL() * ln_L;
        return fn.outer() * log_add_exp(k_term, l_term);
    }
    double operator()(const CES &fn) const {
        const double k_term = std::log(fn.alpha()) + fn.p() * ln_K;
        const double l_term = std::log1p(-fn.alpha()) + fn.p() * ln_L;
        return fn.ln_A() + (fn.v() / fn.p()) * log_add_exp(k_term, l_term);
    }
};

}  // namespace

double log_evaluate(const ProductionFunction &fn, double L, double K) {
    if (!(L > 0.0) || !(K > 0.0) || !std::isfinite(L) || !std::isfinite(K)) {
        throw Error(ErrorCode::domain, "inputs must be positive and finite, got L=" +
                                           format_g17(L) + " K=" + format_g17(K));
    }
    return std::visit(LogEvaluator{std::log(L), std::log(K)}, fn);
}

double log_evaluate_at_logs(const ProductionFunction &fn, double ln_L, double ln_K) noexcept {
    return std::visit(LogEvaluator{ln_L, ln_K}, fn);
}

double evaluate(const ProductionFunction &fn, double L, double K) {
    return checked_exp(log_evaluate(fn, L, K), "Y");
}

}  // namespace prodfn
