#include "json_writer.hpp"

#include <cmath>
#include <cstdio>

#include "prodfn/numfmt.hpp"

namespace prodfn::cli {

std::string json_escape(std::string_view text) {
    std::string out = "\"";
    for (const char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
                out += buf;
            } else {
                out.push_back(c);
            }
        }
    }
    out.push_back('"');
    return out;
}

void JsonWriter::newline() {
    out_.push_back('\n');
    out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::before_value() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (stack_.empty()) return;
    if (stack_.back().count++ > 0) out_.push_back(',');
    newline();
}

void JsonWriter::open(char bracket) {
    before_value();
    out_.push_back(bracket);
    stack_.push_back({bracket == '{'});
}

void JsonWriter::close(char bracket) {
    const bool had_items = stack_.back().count > 0;
    stack_.pop_back();
    if (had_items) newline();
    out_.push_back(bracket);
}

JsonWriter &JsonWriter::begin_object() {
    open('{');
    return *this;
}

JsonWriter &JsonWriter::end_object() {
    close('}');
    return *this;
}

JsonWriter &JsonWriter::begin_array() {
    open('[');
    return *this;
}

JsonWriter &JsonWriter::end_array() {
    close(']');
    return *this;
}

JsonWriter &JsonWriter::key(std::string_view name) {
    before_value();
    out_ += json_escape(name);
    out_ += ": ";
    after_key_ = true;
    return *this;
}

JsonWriter &JsonWriter::value(double v) {
    if (!std::isfinite(v)) return null();
    before_value();
    out_ += format_g17(v);
    return *this;
}

JsonWriter &JsonWriter::value(std::int64_t v) {
    before_value();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter &JsonWriter::value(bool v) {
    before_value();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter &JsonWriter::value(std::string_view v) {
    before_value();
    out_ += json_escape(v);
    return *this;
}

JsonWriter &JsonWriter::null() {
    before_value();
    out_ += "null";
    return *this;
}

}  // namespace prodfn::cli
