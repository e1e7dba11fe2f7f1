#include "prodfn/ingest.hpp"

#include <cmath>
#include <optional>
#include <string_view>

#include "prodfn/error.hpp"
#include "prodfn/numfmt.hpp"

namespace prodfn {

namespace {

[[noreturn]] void data_error(const std::string &message) {
    throw Error(ErrorCode::data, message);
}

std::string row_prefix(std::size_t row) { return "row " + std::to_string(row) + ": "; }

// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_record(std::string_view line, std::size_t row) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else {
            field.push_back(c);
        }
    }
    if (quoted) data_error(row_prefix(row) + "unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

std::string_view strip_trailing_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::size_t find_column(const std::vector<std::string> &header, const std::string &name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string_view cell = header[i];
        const auto first = cell.find_first_not_of(" \t");
        const auto last = cell.find_last_not_of(" \t");
        if (first != std::string_view::npos && cell.substr(first, last - first + 1) == name) {
            return i;
        }
    }
    data_error("row 1: missing column '" + name + "'");
}

void check_years(std::span<const Observation> values, const std::vector<std::size_t> &rows) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        const int prev = values[i - 1].year;
        const int year = values[i].year;
        if (year == prev) {
            data_error(row_prefix(rows[i]) + "duplicate year " + std::to_string(year));
        }
        if (year != prev + 1) {
            data_error(row_prefix(rows[i]) + "year " + std::to_string(year) +
                       " does not follow " + std::to_string(prev) + " consecutively");
        }
    }
}

}  // namespace

TimeSeries::TimeSeries(std::string name, std::vector<Observation> values)
    : name_(std::move(name)), values_(std::move(values)) {
    if (values_.empty()) data_error("series '" + name_ + "' is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const auto &obs = values_[i];
        if (!(obs.value > 0.0) || !std::isfinite(obs.value)) {
            data_error("series '" + name_ + "': value at year " + std::to_string(obs.year) +
                       " must be positive and finite, got " + format_g17(obs.value));
        }
        if (i > 0 && obs.year != values_[i - 1].year + 1) {
            data_error("series '" + name_ + "': years must be consecutive and increasing, got " +
                       std::to_string(values_[i - 1].year) + " then " +
                       std::to_string(obs.year));
        }
    }
}

std::vector<TimeSeries> load_series(std::istream &source, const CsvSchema &schema) {
    if (schema.value_columns.empty()) data_error("schema names no value columns");

    std::string raw;
    std::size_t row = 0;
    std::optional<std::vector<std::string>> header;
    while (!header && std::getline(source, raw)) {
        ++row;
        std::string_view line = strip_trailing_cr(raw);
        if (row == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
        if (is_blank(line)) continue;
        header = split_record(line, row);
    }
    if (!header) data_error("input has no header row");

    const std::size_t year_idx = find_column(*header, schema.year_column);
    std::vector<std::size_t> value_idx;
    for (const auto &mapping : schema.value_columns) {
        value_idx.push_back(find_column(*header, mapping.column));
    }

    std::vector<std::vector<Observation>> columns(value_idx.size());
    std::vector<std::size_t> rows;
    while (std::getline(source, raw)) {
        ++row;
        const std::string_view line = strip_trailing_cr(raw);
        if (is_blank(line)) continue;
        const auto fields = split_record(line, row);

        const auto cell = [&](std::size_t idx, const std::string &column) -> const std::string & {
            if (idx >= fields.size()) {
                data_error(row_prefix(row) + "missing value for column '" + column + "'");
            }
            return fields[idx];
        };

        const auto year = parse_integer(cell(year_idx, schema.year_column));
        if (!year || *year < -1'000'000 || *year > 1'000'000) {
            data_error(row_prefix(row) + "invalid year '" + fields[year_idx] + "'");
        }
        for (std::size_t c = 0; c < value_idx.size(); ++c) {
            const auto &column = schema.value_columns[c].column;
            const auto &text = cell(value_idx[c], column);
            const auto value = parse_double(text);
            if (!value || !std::isfinite(*value)) {
                data_error(row_prefix(row) + "non-numeric value '" + text + "' in column '" +
                           column + "'");
            }
            if (!(*value > 0.0)) {
                data_error(row_prefix(row) + "non-positive value " + text + " in column '" +
                           column + "'");
            }
            columns[c].push_back({static_cast<int>(*year), *value});
        }
        rows.push_back(row);
    }
    if (rows.empty()) data_error("input has a header but no data rows");
    check_years(columns.front(), rows);

    std::vector<TimeSeries> out;
    out.reserve(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out.emplace_back(schema.value_columns[c].name, std::move(columns[c]));
    }
    return out;
}

void write_series(std::ostream &sink, std::span<const TimeSeries> series,
                  const std::string &year_column) {
    if (series.empty()) return;
    const auto &first = series.front();
    for (const auto &s : series) {
        if (s.base_year() != first.base_year() || s.size() != first.size()) {
            data_error("cannot write series with different year ranges ('" + first.name() +
                       "' vs '" + s.name() + "')");
        }
    }
    sink << year_column;
    for (const auto &s : series) sink << ',' << s.name();
    sink << '\n';
    for (std::size_t i = 0; i < first.size(); ++i) {
        sink << first.values()[i].year;
        for (const auto &s : series) sink << ',' << format_shortest(s.values()[i].value);
        sink << '\n';
    }
}

TimeSeries normalize_base100(const TimeSeries &series) {
    const double first = series.values().front().value;
    if (first == 100.0) return series;
    std::vector<Observation> scaled(series.values().begin(), series.values().end());
    for (auto &obs : scaled) obs.value = obs.value / first * 100.0;
    scaled.front().value = 100.0;
    return TimeSeries(series.name(), std::move(scaled));
}

}  // namespace prodfn
