#pragma once

#include <array>

#include "prodfn/core.hpp"
#include "prodfn/ingest.hpp"

namespace prodfn {

/// Regression statistics of ln(value) against t. Residuals are in log units.
struct FitDiagnostics {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    double residual_max_abs = 0.0;
    std::size_t n_points = 0;
};

struct LogLinearFit {
    double rate;   // b
    double ln_x0;  // intercept at t = 0
    FitDiagnostics diagnostics;
};

/// OLS of ln(value) on t = year - base_year, solved in closed form from
/// centered sums.
LogLinearFit fit_log_linear(const TimeSeries &series);

/// Same regression with an explicit time origin: t = year - origin_year.
LogLinearFit fit_log_linear(const TimeSeries &series, int origin_year);

struct SystemFit {
    ExponentialModel model;
    std::array<FitDiagnostics, 3> diagnostics;  // labor, capital, output
};

/// Fits each series independently. All three must span the same years;
/// the shared first year becomes the model's base year.
SystemFit fit_system(const TimeSeries &labor, const TimeSeries &capital,
                     const TimeSeries &output);

}  // namespace prodfn
