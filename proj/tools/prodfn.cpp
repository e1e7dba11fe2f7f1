// prodfn: fit exponential growth systems to L/K/Y index data and derive
// production functions that are invariants of the fitted system.
//
// Exit codes: 0 success, 1 check exceeded tolerance, 2 usage error,
// 3 data/parse error, 4 math/degeneracy error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "function_json.hpp"
#include "json_writer.hpp"
#include "prodfn/core.hpp"
#include "prodfn/error.hpp"
#include "prodfn/fit.hpp"
#include "prodfn/ingest.hpp"
#include "prodfn/invariants.hpp"
#include "prodfn/modelspec.hpp"
#include "prodfn/numfmt.hpp"

namespace {

using namespace prodfn;
using prodfn::cli::JsonWriter;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitMath = 4;

constexpr double kDefaultHorizon = 24.0;
constexpr double kDefaultStep = 0.25;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// PRODFN_LOG = quiet | error | warn | info | debug (default warn)
enum class LogLevel { quiet, error, warn, info, debug };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char *env = std::getenv("PRODFN_LOG");
        const std::string v = env ? env : "";
        if (v == "quiet") return LogLevel::quiet;
        if (v == "error") return LogLevel::error;
        if (v == "info") return LogLevel::info;
        if (v == "debug") return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

void log(LogLevel level, const std::string &message) {
    static const char *names[] = {"", "error", "warn", "info", "debug"};
    if (level <= log_level() && level != LogLevel::quiet) {
        std::cerr << "prodfn: " << names[static_cast<int>(level)] << ": " << message << '\n';
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::data, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json parse_json(const std::string &text, const std::string &path) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorCode::data, "'" + path + "' is not valid JSON: " + e.what());
    }
}

bool looks_like_json(const std::string &text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string::npos && text[first] == '{';
}

ExponentialModel model_from_json_file(const std::string &path) {
    return cli::read_model(parse_json(read_file(path), path));
}

ExponentialModel model_from_spec_file(const std::string &path) {
    return to_model(parse_model(read_file(path)));
}

// Fit/derive reports (JSON) or model DSL files.
ExponentialModel model_from_any_file(const std::string &path) {
    const auto text = read_file(path);
    if (looks_like_json(text)) return cli::read_model(parse_json(text, path));
    return to_model(parse_model(text));
}

struct Grid {
    double start, stop, step;
    std::vector<double> points;
};

Grid parse_grid(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("--grid expects START:STOP:STEP, got '" + text + "'");
    double v[3];
    for (int i = 0; i < 3; ++i) {
        const auto parsed = parse_double(parts[i]);
        if (!parsed) throw UsageError("--grid component '" + parts[i] + "' is not a number");
        v[i] = *parsed;
    }
    try {
        return {v[0], v[1], v[2], make_grid(v[0], v[1], v[2])};
    } catch (const Error &e) {
        throw UsageError(std::string("--grid: ") + e.what());
    }
}

void write_grid(JsonWriter &out, const Grid &grid) {
    out.key("grid")
        .begin_object()
        .field("start", grid.start)
        .field("stop", grid.stop)
        .field("step", grid.step)
        .field("points", grid.points.size())
        .end_object();
}

// ---------------------------------------------------------------- fit/export

struct DataOptions {
    std::string csv;
    std::string year_col, labor_col, capital_col, output_col;
    bool normalize = false;
};

void add_data_options(CLI::App *cmd, DataOptions &opt) {
    cmd->add_option("--csv", opt.csv, "Input CSV file")->required();
    cmd->add_option("--year-col", opt.year_col, "Year column")->required();
    cmd->add_option("--labor-col", opt.labor_col, "Labor index column")->required();
    cmd->add_option("--capital-col", opt.capital_col, "Capital index column")->required();
    cmd->add_option("--output-col", opt.output_col, "Output index column")->required();
    cmd->add_flag("--normalize", opt.normalize, "Rescale each series to 100 in its first year");
}

std::vector<TimeSeries> load_data(const DataOptions &opt, bool role_names) {
    std::ifstream in(opt.csv, std::ios::binary);
    if (!in) throw Error(ErrorCode::data, "cannot open '" + opt.csv + "'");
    const CsvSchema schema{opt.year_col,
                           {{opt.labor_col, role_names ? "labor" : opt.labor_col},
                            {opt.capital_col, role_names ? "capital" : opt.capital_col},
                            {opt.output_col, role_names ? "output" : opt.output_col}}};
    auto series = load_series(in, schema);
    log(LogLevel::info, "loaded " + std::to_string(series.front().size()) + " rows from " + opt.csv);
    if (opt.normalize) {
        for (auto &s : series) s = normalize_base100(s);
    }
    return series;
}

int cmd_fit(const DataOptions &opt) {
    const auto series = load_data(opt, true);
    const auto fit = fit_system(series[0], series[1], series[2]);

    JsonWriter out;
    out.begin_object()
        .field("format", "prodfn-fit")
        .field("version", 1)
        .field("base_year", fit.model.base_year())
        .field("last_year", series[0].last_year())
        .field("normalized", opt.normalize);
    out.key("model");
    cli::write_model(out, fit.model);
    out.key("diagnostics").begin_object();
    const char *names[] = {"labor", "capital", "output"};
    for (int i = 0; i < 3; ++i) {
        out.key(names[i]);
        cli::write_diagnostics(out, fit.diagnostics[i]);
        log(LogLevel::debug, std::string(names[i]) + " r_squared=" +
                                 format_g17(fit.diagnostics[i].r_squared));
    }
    out.end_object().end_object();
    std::cout << out.str();
    return 0;
}

int cmd_export(const DataOptions &opt) {
    const auto series = load_data(opt, false);
    write_series(std::cout, series, opt.year_col);
    return 0;
}

// -------------------------------------------------------------------- derive

struct DeriveOptions {
    std::string from_fit, from_spec;
    std::string family;
    std::optional<double> alpha;
    double tol = 1e-6;
    double horizon = kDefaultHorizon;
};

int cmd_derive(const DeriveOptions &opt) {
    const auto model = opt.from_fit.empty() ? model_from_spec_file(opt.from_spec)
                                            : model_from_json_file(opt.from_fit);
    if (opt.alpha && !(*opt.alpha > 0.0 && *opt.alpha < 1.0)) {
        throw UsageError("--alpha must lie strictly inside (0,1)");
    }
    if (!(opt.tol >= 0.0)) throw UsageError("--tol must be non-negative");
    if (!(opt.horizon >= 0.0)) throw UsageError("--horizon must be non-negative");

    std::vector<std::string> warnings;
    std::optional<CrsElasticities> crs;
    if (model.b1() != model.b2()) crs = crs_elasticities(model);

    const bool uses_alpha = opt.family != "fundamental";
    double alpha = 0.5;
    if (opt.alpha) {
        alpha = *opt.alpha;
    } else if (crs && crs->is_share()) {
        alpha = crs->alpha;
    } else if (uses_alpha) {
        warnings.push_back("b3 is not strictly between b1 and b2; using alpha = 0.5");
    }
    if (crs && uses_alpha) {
        for (const auto &w : crs->warnings) warnings.push_back(w);
    }

    std::vector<ProductionFunction> functions;
    if (opt.family == "cobb-douglas") {
        functions.emplace_back(cobb_douglas_member(model, alpha));
    } else if (opt.family == "ces-like") {
        functions.emplace_back(ces_like_member(model, alpha));
    } else if (opt.family == "ces") {
        auto reduced = ces_reduction(model, alpha, opt.tol);
        functions.emplace_back(reduced.function);
        for (auto &w : reduced.warnings) warnings.push_back(std::move(w));
    } else {
        functions.emplace_back(fundamental_invariant_L(model));
        functions.emplace_back(fundamental_invariant_K(model));
    }

    const Grid grid{0.0, opt.horizon, kDefaultStep, make_grid(0.0, opt.horizon, kDefaultStep)};
    double deviation = 0.0;
    for (const auto &fn : functions) {
        deviation = std::max(deviation, constancy_check(fn, model, grid.points));
    }
    for (const auto &w : warnings) log(LogLevel::warn, w);

    JsonWriter out;
    out.begin_object()
        .field("format", "prodfn-derive")
        .field("version", 1)
        .field("family", opt.family);
    out.key("model");
    cli::write_model(out, model);
    out.key("alpha");
    if (uses_alpha) {
        out.value(alpha);
    } else {
        out.null();
    }
    out.key("crs_elasticities");
    if (crs) {
        out.begin_object()
            .field("alpha", crs->alpha)
            .field("beta", crs->beta)
            .field("in_unit_interval", crs->is_share())
            .end_object();
    } else {
        out.null();
    }
    out.key("functions").begin_array();
    for (const auto &fn : functions) cli::write_function(out, fn);
    out.end_array();
    out.key("constancy").begin_object();
    write_grid(out, grid);
    out.field("max_relative_deviation", deviation).end_object();
    out.key("warnings").begin_array();
    for (const auto &w : warnings) out.value(w);
    out.end_array().end_object();
    std::cout << out.str();
    return 0;
}

// --------------------------------------------------------------------- check

struct CheckOptions {
    std::string model, function, grid, table;
    double tol = 1e-9;
};

int cmd_check(const CheckOptions &opt) {
    const auto grid = parse_grid(opt.grid);
    const auto model = model_from_any_file(opt.model);
    const auto functions = cli::read_functions(parse_json(read_file(opt.function), opt.function));

    std::vector<double> per_function;
    double worst = 0.0;
    for (const auto &fn : functions) {
        const double d = constancy_check(fn, model, grid.points);
        per_function.push_back(d);
        if (!(d <= worst)) worst = d;
    }
    const bool passed = worst <= opt.tol;

    if (!opt.table.empty()) {
        std::ofstream table(opt.table, std::ios::binary);
        if (!table) throw Error(ErrorCode::data, "cannot write '" + opt.table + "'");
        const bool many = functions.size() > 1;
        table << (many ? "function," : "") << "t,Y_model,Y_fn,rel_dev\n";
        for (std::size_t f = 0; f < functions.size(); ++f) {
            for (const double t : grid.points) {
                const auto at = trajectory(model, t);
                if (many) table << f << ',';
                table << format_g17(t) << ',' << format_g17(at.Y) << ','
                      << format_g17(evaluate(functions[f], at.L, at.K)) << ','
                      << format_g17(relative_deviation(functions[f], model, t)) << '\n';
            }
        }
    }

    JsonWriter out;
    out.begin_object().field("format", "prodfn-check").field("version", 1);
    write_grid(out, grid);
    out.field("tol", opt.tol).field("max_relative_deviation", worst).field("passed", passed);
    out.key("functions").begin_array();
    for (std::size_t f = 0; f < functions.size(); ++f) {
        out.begin_object()
            .field("kind", kind_name(functions[f]))
            .field("max_relative_deviation", per_function[f])
            .end_object();
    }
    out.end_array().end_object();
    std::cout << out.str();
    if (!passed) {
        log(LogLevel::warn, "deviation " + format_g17(worst) + " exceeds tolerance " +
                                format_g17(opt.tol));
        return kExitCheckFailed;
    }
    return 0;
}

// ------------------------------------------------------------------ simulate

int cmd_simulate(const std::string &model_path, const std::string &grid_text) {
    const auto grid = parse_grid(grid_text);
    const auto model = model_from_any_file(model_path);
    std::string csv = "t,L,K,Y\n";
    for (const double t : grid.points) {
        const auto at = trajectory(model, t);
        csv += format_g17(t) + ',' + format_g17(at.L) + ',' + format_g17(at.K) + ',' +
               format_g17(at.Y) + '\n';
    }
    std::cout << csv;
    return 0;
}

int report_error(std::string_view code, const std::string &message, int exit_code) {
    JsonWriter err;
    err.begin_object().key("error").begin_object().field("code", code).field("message", message)
        .end_object().end_object();
    std::cerr << err.str();
    return exit_code;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::data:
    case ErrorCode::parse: return kExitData;
    default: return kExitMath;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fit exponential growth systems and derive invariant production functions"};
    app.require_subcommand(1);

    DataOptions fit_opt;
    auto *fit = app.add_subcommand("fit", "Fit b1, b2, b3 and initial levels to L/K/Y series");
    add_data_options(fit, fit_opt);

    DataOptions export_opt;
    auto *exp = app.add_subcommand("export", "Re-emit the mapped columns as CSV");
    add_data_options(exp, export_opt);

    DeriveOptions derive_opt;
    auto *derive = app.add_subcommand("derive", "Derive an invariant production function");
    auto *from_fit = derive->add_option("--from-fit", derive_opt.from_fit, "Fit report JSON");
    auto *from_spec = derive->add_option("--from-spec", derive_opt.from_spec, "Model DSL file");
    from_fit->excludes(from_spec);
    derive->add_option("--family", derive_opt.family, "Function family")
        ->required()
        ->check(CLI::IsMember({"cobb-douglas", "ces-like", "ces", "fundamental"}));
    derive->add_option("--alpha", derive_opt.alpha, "Share parameter in (0,1)");
    derive->add_option("--tol", derive_opt.tol, "CES reduction tolerance")->capture_default_str();
    derive->add_option("--horizon", derive_opt.horizon, "Constancy check horizon in years")->capture_default_str();

    CheckOptions check_opt;
    auto *check = app.add_subcommand("check", "Measure how constant a function is along a model");
    check->add_option("--model", check_opt.model, "Model (fit JSON or DSL)")->required();
    check->add_option("--function", check_opt.function, "Function or derive report JSON")
        ->required();
    check->add_option("--grid", check_opt.grid, "START:STOP:STEP")->required();
    check->add_option("--tol", check_opt.tol, "Pass threshold")->capture_default_str();
    check->add_option("--table", check_opt.table, "Write t,Y_model,Y_fn,rel_dev CSV here");

    std::string sim_model, sim_grid;
    auto *simulate = app.add_subcommand("simulate", "Tabulate the closed-form trajectory");
    simulate->add_option("--model", sim_model, "Model (fit JSON or DSL)")->required();
    simulate->add_option("--grid", sim_grid, "START:STOP:STEP")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*fit) return cmd_fit(fit_opt);
        if (*exp) return cmd_export(export_opt);
        if (*derive) {
            if (derive_opt.from_fit.empty() == derive_opt.from_spec.empty()) {
                throw UsageError("derive needs exactly one of --from-fit or --from-spec");
            }
            return cmd_derive(derive_opt);
        }
        if (*check) return cmd_check(check_opt);
        if (*simulate) return cmd_simulate(sim_model, sim_grid);
    } catch (const UsageError &e) {
        return report_error("usage", e.what(), kExitUsage);
    } catch (const ParseError &e) {
        return report_error(std::string("parse.") + std::string(to_string(e.kind())), e.what(),
                            kExitData);
    } catch (const Error &e) {
        return report_error(to_string(e.code()), e.what(), exit_code_for(e.code()));
    }
    return kExitUsage;
}
