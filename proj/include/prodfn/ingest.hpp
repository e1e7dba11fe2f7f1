#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace prodfn {

struct Observation {
    int year;
    double value;

    bool operator==(const Observation &) const = default;
};

/// One annual index series. Years are consecutive and increasing, values are
/// strictly positive and the base year is the first year.
class TimeSeries {
public:
    /// Throws Error(data) if the observations break any of the invariants above.
    TimeSeries(std::string name, std::vector<Observation> values);

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] int base_year() const noexcept { return values_.front().year; }
    [[nodiscard]] int last_year() const noexcept { return values_.back().year; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const Observation> values() const noexcept { return values_; }

    bool operator==(const TimeSeries &) const = default;

private:
    std::string name_;
    std::vector<Observation> values_;
};

struct ColumnMapping {
    std::string column;  // header name in the CSV
    std::string name;    // name given to the resulting series
};

struct CsvSchema {
    std::string year_column;
    std::vector<ColumnMapping> value_columns;
};

/// Reads a headed, comma-separated file and returns one series per mapped
/// value column, in schema order. Errors carry the 1-based file row.
std::vector<TimeSeries> load_series(std::istream &source, const CsvSchema &schema);

/// Writes `year,<name>...` rows. Values use the shortest decimal form that
/// parses back to the same double. All series must cover the same years.
void write_series(std::ostream &sink, std::span<const TimeSeries> series,
                  const std::string &year_column = "year");

/// Rescales so the first observation is exactly 100.
TimeSeries normalize_base100(const TimeSeries &series);

}  // namespace prodfn
