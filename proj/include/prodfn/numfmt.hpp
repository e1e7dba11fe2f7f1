#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace prodfn {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_shortest(double value);

/// Fixed 17 significant digits ("%.17g").
std::string format_g17(double value);

/// Whole-string decimal parse (optional leading '+', surrounding blanks
/// allowed). Empty optional on any leftover characters or out-of-range value.
std::optional<double> parse_double(std::string_view text);

std::optional<long> parse_integer(std::string_view text);

}  // namespace prodfn
