#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "prodfn/core.hpp"
#include "prodfn/error.hpp"

namespace prodfn {

struct VariableDecl {
    std::string name;
    double rate = 0.0;
    double init = 1.0;

    bool operator==(const VariableDecl &) const = default;
};

/// A validated three-variable diagonal growth system with L/K/Y roles bound.
struct ModelSpec {
    std::vector<VariableDecl> variables;  // declaration order
    std::string output_var;
    std::string labor_var;
    std::string capital_var;

    bool operator==(const ModelSpec &) const = default;
};

enum class ParseErrorKind {
    syntax,
    unknown_variable,
    off_diagonal,
    duplicate_declaration,
    missing_role,
    missing_rate,
    variable_count,
    role_conflict,
};

std::string_view to_string(ParseErrorKind kind) noexcept;

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
               const std::string &detail);

    [[nodiscard]] ParseErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }
    [[nodiscard]] const std::string &detail() const noexcept { return detail_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/**
 * Parses the model DSL:
 *
 *     var L = 106.65;  dL/dt = 0.02549605 * L;  role labor L;
 *
 * '#' starts a comment running to end of line. Statements may share a line
 * and may appear in any order. Throws ParseError on any failure.
 */
ModelSpec parse_model(std::string_view text);

/// Canonical text form; parse_model(render(spec)) == spec.
std::string render(const ModelSpec &spec);

/// Binds roles to (L, K, Y) with base year 0. Throws Error(domain) for a
/// non-positive initial value.
ExponentialModel to_model(const ModelSpec &spec);

}  // namespace prodfn
