#include "prodfn/modelspec.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>

#include "prodfn/numfmt.hpp"

namespace prodfn {

std::string_view to_string(ParseErrorKind kind) noexcept {
    switch (kind) {
    case ParseErrorKind::syntax: return "syntax";
    case ParseErrorKind::unknown_variable: return "unknown_variable";
    case ParseErrorKind::off_diagonal: return "off_diagonal";
    case ParseErrorKind::duplicate_declaration: return "duplicate_declaration";
    case ParseErrorKind::missing_role: return "missing_role";
    case ParseErrorKind::missing_rate: return "missing_rate";
    case ParseErrorKind::variable_count: return "variable_count";
    case ParseErrorKind::role_conflict: return "role_conflict";
    }
    return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
                       const std::string &detail)
    : Error(ErrorCode::parse, "line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ": " + std::string(to_string(kind)) +
                                  ": " + detail),
      kind_(kind), line_(line), column_(column), detail_(detail) {}

namespace {

struct Position {
    std::size_t line = 1;
    std::size_t column = 1;
};

enum class TokenType { ident, number, symbol, end };

struct Token {
    TokenType type;
    std::string_view text;
    double number = 0.0;
    Position pos;
};

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_alpha(c) || is_digit(c) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_blank_and_comments();
        const Position start = pos_;
        if (at_ >= text_.size()) return {TokenType::end, {}, 0.0, start};

        const char c = text_[at_];
        if (is_alpha(c)) {
            const std::size_t begin = at_;
            while (at_ < text_.size() && is_ident_char(text_[at_])) advance();
            return {TokenType::ident, text_.substr(begin, at_ - begin), 0.0, start};
        }
        if (is_digit(c) || c == '.' || ((c == '+' || c == '-') && starts_number(at_ + 1))) {
            return lex_number(start);
        }
        if (c == '=' || c == ';' || c == '*' || c == '/') {
            advance();
            return {TokenType::symbol, text_.substr(at_ - 1, 1), 0.0, start};
        }
        throw ParseError(ParseErrorKind::syntax, start.line, start.column,
                         "unexpected character " + describe(c));
    }

private:
    static std::string describe(char c) {
        const auto byte = static_cast<unsigned char>(c);
        if (byte >= 0x20 && byte < 0x7f) return std::string("'") + c + "'";
        char buf[8];
        std::snprintf(buf, sizeof buf, "0x%02X", byte);
        return buf;
    }

    bool starts_number(std::size_t i) const {
        if (i >= text_.size()) return false;
        if (is_digit(text_[i])) return true;
        return text_[i] == '.' && i + 1 < text_.size() && is_digit(text_[i + 1]);
    }

    void advance() {
        if (text_[at_] == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else {
            ++pos_.column;
        }
        ++at_;
    }

    void skip_blank_and_comments() {
        while (at_ < text_.size()) {
            const char c = text_[at_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (at_ < text_.size() && text_[at_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token lex_number(Position start) {
        const std::size_t begin = at_;
        if (text_[at_] == '+' || text_[at_] == '-') advance();
        std::size_t mantissa_digits = 0;
        while (at_ < text_.size() && is_digit(text_[at_])) {
            advance();
            ++mantissa_digits;
        }
        if (at_ < text_.size() && text_[at_] == '.') {
            advance();
            while (at_ < text_.size() && is_digit(text_[at_])) {
                advance();
                ++mantissa_digits;
            }
        }
        if (mantissa_digits == 0) {
            throw ParseError(ParseErrorKind::syntax, start.line, start.column,
                             "malformed number");
        }
        if (at_ < text_.size() && (text_[at_] == 'e' || text_[at_] == 'E')) {
            std::size_t look = at_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && is_digit(text_[look])) {
                while (at_ < look) advance();
                while (at_ < text_.size() && is_digit(text_[at_])) advance();
            } else {
                throw ParseError(ParseErrorKind::syntax, start.line, start.column,
                                 "malformed exponent in number");
            }
        }
        const std::string_view text = text_.substr(begin, at_ - begin);
        const auto value = parse_double(text);
        if (!value || !std::isfinite(*value)) {
            throw ParseError(ParseErrorKind::syntax, start.line, start.column,
                             "number " + std::string(text) + " is out of range");
        }
        return {TokenType::number, text, *value, start};
    }

    std::string_view text_;
    std::size_t at_ = 0;
    Position pos_;
};

enum class Role { labor, capital, output };

std::optional<Role> role_from(std::string_view word) {
    if (word == "labor") return Role::labor;
    if (word == "capital") return Role::capital;
    if (word == "output") return Role::output;
    return std::nullopt;
}

struct VarStmt {
    std::string name;
    double init;
    Position pos;
};

struct RateStmt {
    std::string target;
    double rate;
    std::string factor;
    Position pos;
    Position factor_pos;
};

struct RoleStmt {
    Role role;
    std::string name;
    Position pos;
    Position name_pos;
};

[[noreturn]] void fail(ParseErrorKind kind, Position pos, const std::string &detail) {
    throw ParseError(kind, pos.line, pos.column, detail);
}

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { look_ = lexer_.next(); }

    ModelSpec run() {
        if (look_.type == TokenType::end) fail(ParseErrorKind::syntax, look_.pos, "empty model");
        while (look_.type != TokenType::end) statement();
        return validate();
    }

private:
    Token take() {
        Token t = look_;
        look_ = lexer_.next();
        return t;
    }

    static std::string show(const Token &t) {
        if (t.type == TokenType::end) return "end of input";
        return "'" + std::string(t.text) + "'";
    }

    void expect_symbol(char symbol) {
        if (look_.type != TokenType::symbol || look_.text[0] != symbol) {
            fail(ParseErrorKind::syntax, look_.pos,
                 std::string("expected '") + symbol + "', found " + show(look_));
        }
        take();
    }

    Token expect_ident(const char *what) {
        if (look_.type != TokenType::ident) {
            fail(ParseErrorKind::syntax, look_.pos,
                 std::string("expected ") + what + ", found " + show(look_));
        }
        return take();
    }

    Token expect_variable_name() {
        Token t = expect_ident("variable name");
        if (t.text == "var" || t.text == "role") {
            fail(ParseErrorKind::syntax, t.pos,
                 "'" + std::string(t.text) + "' is a keyword, not a variable name");
        }
        return t;
    }

    double expect_number() {
        if (look_.type != TokenType::number) {
            fail(ParseErrorKind::syntax, look_.pos, "expected number, found " + show(look_));
        }
        return take().number;
    }

    void statement() {
        if (look_.type != TokenType::ident) {
            fail(ParseErrorKind::syntax, look_.pos,
                 "expected 'var', 'role' or a rate equation, found " + show(look_));
        }
        const Token head = take();
        if (head.text == "var") {
            var_statement(head.pos);
        } else if (head.text == "role") {
            role_statement(head.pos);
        } else if (head.text.size() >= 2 && head.text[0] == 'd' && look_.type == TokenType::symbol &&
                   look_.text[0] == '/') {
            rate_statement(head);
        } else {
            fail(ParseErrorKind::syntax, head.pos,
                 "expected 'var', 'role' or a rate equation, found " + show(head));
        }
    }

    void var_statement(Position pos) {
        const Token name = expect_variable_name();
        expect_symbol('=');
        const double init = expect_number();
        expect_symbol(';');
        for (const auto &v : vars_) {
            if (v.name == name.text) {
                fail(ParseErrorKind::duplicate_declaration, pos,
                     "variable '" + v.name + "' already declared at line " +
                         std::to_string(v.pos.line));
            }
        }
        vars_.push_back({std::string(name.text), init, pos});
    }

    void rate_statement(const Token &head) {
        expect_symbol('/');
        const Token dt = expect_ident("'dt'");
        if (dt.text != "dt") {
            fail(ParseErrorKind::syntax, dt.pos, "expected 'dt', found " + show(dt));
        }
        expect_symbol('=');
        const double rate = expect_number();
        expect_symbol('*');
        const Token factor = expect_variable_name();
        expect_symbol(';');
        const std::string target(head.text.substr(1));
        if (target == "var" || target == "role") {
            fail(ParseErrorKind::syntax, head.pos, "'" + target + "' is a keyword, not a variable name");
        }
        for (const auto &r : rates_) {
            if (r.target == target) {
                fail(ParseErrorKind::duplicate_declaration, head.pos,
                     "rate of '" + target + "' already given at line " +
                         std::to_string(r.pos.line));
            }
        }
        rates_.push_back({target, rate, std::string(factor.text), head.pos, factor.pos});
    }

    void role_statement(Position pos) {
        const Token word = expect_ident("role (labor, capital or output)");
        const auto role = role_from(word.text);
        if (!role) {
            fail(ParseErrorKind::syntax, word.pos,
                 "unknown role " + show(word) + "; expected labor, capital or output");
        }
        const Token name = expect_variable_name();
        expect_symbol(';');
        for (const auto &r : roles_) {
            if (r.role == *role) {
                fail(ParseErrorKind::duplicate_declaration, pos,
                     "role " + std::string(word.text) + " already bound at line " +
                         std::to_string(r.pos.line));
            }
        }
        roles_.push_back({*role, std::string(name.text), pos, name.pos});
    }

    const VarStmt *find_var(const std::string &name) const {
        for (const auto &v : vars_) {
            if (v.name == name) return &v;
        }
        return nullptr;
    }

    ModelSpec validate() const {
        for (const auto &r : rates_) {
            if (!find_var(r.target)) {
                fail(ParseErrorKind::unknown_variable, r.pos,
                     "rate given for undeclared variable '" + r.target + "'");
            }
            if (!find_var(r.factor)) {
                fail(ParseErrorKind::unknown_variable, r.factor_pos,
                     "undeclared variable '" + r.factor + "' in rate of '" + r.target + "'");
            }
            if (r.factor != r.target) {
                fail(ParseErrorKind::off_diagonal, r.pos,
                     "d" + r.target + "/dt may only reference " + r.target + ", found '" +
                         r.factor + "'");
            }
        }
        for (const auto &r : roles_) {
            if (!find_var(r.name)) {
                fail(ParseErrorKind::unknown_variable, r.name_pos,
                     "role bound to undeclared variable '" + r.name + "'");
            }
        }
        const Position end = look_.pos;
        if (vars_.size() != 3) {
            fail(ParseErrorKind::variable_count, vars_.size() > 3 ? vars_[3].pos : end,
                 "exactly 3 variables are required, found " + std::to_string(vars_.size()));
        }
        for (const auto &v : vars_) {
            bool has_rate = false;
            for (const auto &r : rates_) has_rate = has_rate || r.target == v.name;
            if (!has_rate) {
                fail(ParseErrorKind::missing_rate, v.pos,
                     "variable '" + v.name + "' has no rate equation");
            }
        }
        ModelSpec spec;
        const auto bound = [&](Role role, const char *word) -> std::string {
            for (const auto &r : roles_) {
                if (r.role == role) return r.name;
            }
            fail(ParseErrorKind::missing_role, end, std::string("no 'role ") + word + "' declaration");
        };
        spec.labor_var = bound(Role::labor, "labor");
        spec.capital_var = bound(Role::capital, "capital");
        spec.output_var = bound(Role::output, "output");
        for (std::size_t i = 1; i < roles_.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (roles_[i].name == roles_[j].name) {
                    fail(ParseErrorKind::role_conflict, roles_[i].pos,
                         "variable '" + roles_[i].name + "' already has a role");
                }
            }
        }
        for (const auto &v : vars_) {
            double rate = 0.0;
            for (const auto &r : rates_) {
                if (r.target == v.name) rate = r.rate;
            }
            spec.variables.push_back({v.name, rate, v.init});
        }
        return spec;
    }

    Lexer lexer_;
    Token look_;
    std::vector<VarStmt> vars_;
    std::vector<RateStmt> rates_;
    std::vector<RoleStmt> roles_;
};

const VariableDecl &lookup(const ModelSpec &spec, const std::string &name) {
    for (const auto &v : spec.variables) {
        if (v.name == name) return v;
    }
    throw Error(ErrorCode::domain, "model spec has no variable '" + name + "'");
}

double log_init(const VariableDecl &v) {
    if (!(v.init > 0.0) || !std::isfinite(v.init)) {
        throw Error(ErrorCode::domain, "initial value of '" + v.name +
                                           "' must be positive, got " + format_g17(v.init));
    }
    return std::log(v.init);
}

}  // namespace

ModelSpec parse_model(std::string_view text) { return Parser(text).run(); }

std::string render(const ModelSpec &spec) {
    std::string out;
    for (const auto &v : spec.variables) {
        const char *role = v.name == spec.labor_var     ? "labor"
                           : v.name == spec.capital_var ? "capital"
                           : v.name == spec.output_var  ? "output"
                                                        : nullptr;
        out += "var " + v.name + " = " + format_shortest(v.init) + ";  d" + v.name +
               "/dt = " + format_shortest(v.rate) + " * " + v.name + ";";
        if (role) out += std::string("  role ") + role + " " + v.name + ";";
        out += '\n';
    }
    return out;
}

ExponentialModel to_model(const ModelSpec &spec) {
    const auto &L = lookup(spec, spec.labor_var);
    const auto &K = lookup(spec, spec.capital_var);
    const auto &Y = lookup(spec, spec.output_var);
    return ExponentialModel(L.rate, K.rate, Y.rate, log_init(L), log_init(K), log_init(Y), 0);
}

}  // namespace prodfn
