#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace prodfn::cli {

/// Streaming JSON emitter. Keys come out in call order; doubles use 17
/// significant digits; non-finite doubles become null.
class JsonWriter {
public:
    JsonWriter &begin_object();
    JsonWriter &end_object();
    JsonWriter &begin_array();
    JsonWriter &end_array();
    JsonWriter &key(std::string_view name);

    JsonWriter &value(double v);
    JsonWriter &value(std::int64_t v);
    JsonWriter &value(int v) { return value(static_cast<std::int64_t>(v)); }
    JsonWriter &value(std::size_t v) { return value(static_cast<std::int64_t>(v)); }
    JsonWriter &value(bool v);
    JsonWriter &value(std::string_view v);
    JsonWriter &value(const char *v) { return value(std::string_view(v)); }
    JsonWriter &null();

    template <typename T>
    JsonWriter &field(std::string_view name, const T &v) {
        key(name);
        return value(v);
    }

    /// Finished document followed by a newline.
    [[nodiscard]] std::string str() const { return out_ + "\n"; }

private:
    void before_value();
    void open(char bracket);
    void close(char bracket);
    void newline();

    struct Level {
        bool object;
        std::size_t count = 0;
    };
    std::string out_;
    std::vector<Level> stack_;
    bool after_key_ = false;
};

std::string json_escape(std::string_view text);

}  // namespace prodfn::cli
