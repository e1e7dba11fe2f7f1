#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prodfn {

/// Broad failure category. The CLI maps these onto exit codes.
enum class ErrorCode {
    domain,         // argument outside the mathematical domain (L <= 0, alpha not in (0,1), ...)
    overflow,       // a closed-form value does not fit in a double
    data,           // malformed or inconsistent input data
    parse,          // model DSL could not be parsed or validated
    degenerate,     // a growth rate makes the requested formula singular
    not_reducible,  // CES reduction preconditions are not met
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace prodfn
