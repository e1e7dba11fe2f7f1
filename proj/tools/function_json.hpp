#pragma once

#include <json.hpp>
#include <vector>

#include "json_writer.hpp"
#include "prodfn/core.hpp"
#include "prodfn/fit.hpp"

namespace prodfn::cli {

void write_model(JsonWriter &out, const ExponentialModel &model);
void write_diagnostics(JsonWriter &out, const FitDiagnostics &diag);
void write_function(JsonWriter &out, const ProductionFunction &fn);

/// Accepts a bare model object or any report carrying a "model" member.
/// Throws Error(data) on malformed input.
ExponentialModel read_model(const nlohmann::json &doc);

/// Accepts a bare function object (has "kind") or a report carrying a
/// "functions" array. Throws Error(data) on malformed input.
std::vector<ProductionFunction> read_functions(const nlohmann::json &doc);

}  // namespace prodfn::cli
