#include "prodfn/fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "prodfn/error.hpp"

namespace prodfn {

LogLinearFit fit_log_linear(const TimeSeries &series) {
    return fit_log_linear(series, series.base_year());
}

LogLinearFit fit_log_linear(const TimeSeries &series, int origin_year) {
    const auto values = series.values();
    const std::size_t n = values.size();
    if (n < 2) {
        throw Error(ErrorCode::data, "series '" + series.name() +
                                         "' needs at least 2 points for a fit, got " +
                                         std::to_string(n));
    }

    std::vector<double> t(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = static_cast<double>(values[i].year - origin_year);
        y[i] = std::log(values[i].value);
    }

    double t_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t_mean += t[i];
        y_mean += y[i];
    }
    t_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = t[i] - t_mean;
        const double dy = y[i] - y_mean;
        sxx += dt * dt;
        sxy += dt * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw Error(ErrorCode::degenerate,
                    "series '" + series.name() + "' has no spread in time; slope undefined");
    }

    const double slope = sxy / sxx;
    const double intercept = y_mean - slope * t_mean;

    double ss_res = 0.0, max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (intercept + slope * t[i]);
        ss_res += r * r;
        max_abs = std::max(max_abs, std::abs(r));
    }
    // A flat series has no variance to explain; it is reported as a perfect fit.
    const double r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);

    return {slope, intercept, FitDiagnostics{slope, intercept, r_squared, max_abs, n}};
}

SystemFit fit_system(const TimeSeries &labor, const TimeSeries &capital,
                     const TimeSeries &output) {
    const auto range = [](const TimeSeries &s) {
        return s.name() + " " + std::to_string(s.base_year()) + "-" +
               std::to_string(s.last_year());
    };
    const auto same_span = [&](const TimeSeries &s) {
        return s.base_year() == labor.base_year() && s.last_year() == labor.last_year();
    };
    if (!same_span(capital) || !same_span(output)) {
        throw Error(ErrorCode::data, "series cover different years: " + range(labor) + ", " +
                                         range(capital) + ", " + range(output));
    }

    const auto l = fit_log_linear(labor);
    const auto k = fit_log_linear(capital);
    const auto y = fit_log_linear(output);
    return {ExponentialModel(l.rate, k.rate, y.rate, l.ln_x0, k.ln_x0, y.ln_x0,
                             labor.base_year()),
            {l.diagnostics, k.diagnostics, y.diagnostics}};
}

}  // namespace prodfn
