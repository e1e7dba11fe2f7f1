#include "function_json.hpp"

#include <cmath>
#include <string>

#include "prodfn/error.hpp"

namespace prodfn::cli {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string &what) {
    throw Error(ErrorCode::data, "malformed JSON: " + what);
}

double number(const json &obj, const char *name) {
    const auto it = obj.find(name);
    if (it == obj.end()) malformed(std::string("missing field '") + name + "'");
    if (!it->is_number()) malformed(std::string("field '") + name + "' is not a number");
    return it->get<double>();
}

// Prefer the exact log form when present; otherwise take the log of the level.
double log_field(const json &obj, const char *ln_name, const char *name) {
    if (obj.contains(ln_name)) return number(obj, ln_name);
    const double level = number(obj, name);
    if (!(level > 0.0)) malformed(std::string("field '") + name + "' must be positive");
    return std::log(level);
}

ProductionFunction read_function(const json &obj) {
    if (!obj.is_object()) malformed("function must be an object");
    const auto kind_it = obj.find("kind");
    if (kind_it == obj.end() || !kind_it->is_string()) malformed("function has no 'kind'");
    const auto kind = kind_it->get<std::string>();
    try {
        if (kind == "power_law") {
            const auto input = obj.value("input", std::string());
            if (input != "labor" && input != "capital") {
                malformed("power_law 'input' must be \"labor\" or \"capital\"");
            }
            return PowerLaw::from_log(log_field(obj, "ln_coeff", "coeff"),
                                      number(obj, "exponent"),
                                      input == "labor" ? Input::labor : Input::capital);
        }
        if (kind == "cobb_douglas") {
            return CobbDouglas::from_log(log_field(obj, "ln_A", "A"), number(obj, "alpha"),
                                         number(obj, "beta"));
        }
        if (kind == "generalized_ces") {
            return GeneralizedCES::from_log(log_field(obj, "ln_cK", "cK"),
                                            log_field(obj, "ln_cL", "cL"), number(obj, "alpha"),
                                            number(obj, "eK"), number(obj, "eL"),
                                            number(obj, "outer"));
        }
        if (kind == "ces") {
            return CES::from_log(log_field(obj, "ln_A", "A"), number(obj, "alpha"),
                                 number(obj, "p"), number(obj, "v"));
        }
    } catch (const Error &e) {
        if (e.code() == ErrorCode::data) throw;
        malformed(kind + ": " + e.what());
    }
    malformed("unknown function kind '" + kind + "'");
}

}  // namespace

void write_model(JsonWriter &out, const ExponentialModel &model) {
    out.begin_object()
        .field("base_year", model.base_year())
        .field("b1", model.b1())
        .field("b2", model.b2())
        .field("b3", model.b3())
        .field("ln_L0", model.ln_L0())
        .field("ln_K0", model.ln_K0())
        .field("ln_Y0", model.ln_Y0())
        .end_object();
}

void write_diagnostics(JsonWriter &out, const FitDiagnostics &diag) {
    out.begin_object()
        .field("slope", diag.slope)
        .field("intercept", diag.intercept)
        .field("r_squared", diag.r_squared)
        .field("residual_max_abs", diag.residual_max_abs)
        .field("n_points", diag.n_points)
        .end_object();
}

void write_function(JsonWriter &out, const ProductionFunction &fn) {
    out.begin_object().field("kind", kind_name(fn));
    if (const auto *f = std::get_if<PowerLaw>(&fn)) {
        out.field("input", to_string(f->input()))
            .field("coeff", f->coeff())
            .field("ln_coeff", f->ln_coeff())
            .field("exponent", f->exponent());
    } else if (const auto *f = std::get_if<CobbDouglas>(&fn)) {
        out.field("A", f->A())
            .field("ln_A", f->ln_A())
            .field("alpha", f->alpha())
            .field("beta", f->beta());
    } else if (const auto *f = std::get_if<GeneralizedCES>(&fn)) {
        out.field("cK", f->cK())
            .field("ln_cK", f->ln_cK())
            .field("cL", f->cL())
            .field("ln_cL", f->ln_cL())
            .field("alpha", f->alpha())
            .field("eK", f->eK())
            .field("eL", f->eL())
            .field("outer", f->outer());
    } else if (const auto *f = std::get_if<CES>(&fn)) {
        out.field("A", f->A())
            .field("ln_A", f->ln_A())
            .field("alpha", f->alpha())
            .field("p", f->p())
            .field("v", f->v());
        out.key("sigma");
        if (const auto sigma = f->sigma()) {
            out.value(*sigma);
        } else {
            out.null();
        }
    }
    out.end_object();
}

ExponentialModel read_model(const json &doc) {
    if (!doc.is_object()) malformed("model document must be an object");
    const json &obj = doc.contains("model") ? doc.at("model") : doc;
    if (!obj.is_object()) malformed("'model' must be an object");
    int base_year = 0;
    if (obj.contains("base_year")) {
        if (!obj.at("base_year").is_number_integer()) malformed("'base_year' must be an integer");
        base_year = obj.at("base_year").get<int>();
    }
    try {
        return ExponentialModel(number(obj, "b1"), number(obj, "b2"), number(obj, "b3"),
                                number(obj, "ln_L0"), number(obj, "ln_K0"), number(obj, "ln_Y0"),
                                base_year);
    } catch (const Error &e) {
        if (e.code() == ErrorCode::data) throw;
        malformed(std::string("model: ") + e.what());
    }
}

std::vector<ProductionFunction> read_functions(const json &doc) {
    if (doc.is_object() && doc.contains("kind")) return {read_function(doc)};
    if (doc.is_object() && doc.contains("functions")) {
        const auto &list = doc.at("functions");
        if (!list.is_array() || list.empty()) malformed("'functions' must be a non-empty array");
        std::vector<ProductionFunction> out;
        for (const auto &item : list) out.push_back(read_function(item));
        return out;
    }
    malformed("expected a function object or a report with 'functions'");
}

}  // namespace prodfn::cli
