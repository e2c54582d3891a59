#include "qnspace/parse.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qns {

namespace {

enum class Tok { number, q, gen, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;     // digits for number
    int gen_index = -1;   // zero-based; -1 for bare "x"/"y" until resolved
    bool gen_alias = false;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    Lexer(std::string_view text, int line, int column)
        : text_(text), line_(line), column_(column) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t = next();
            out.push_back(t);
            if (t.kind == Tok::end) break;
        }
        return out;
    }

private:
    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                column_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++column_;
                ++pos_;
            } else {
                break;
            }
        }
    }

    Token next() {
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) {
            t.kind = Tok::end;
            return t;
        }
        char c = text_[pos_];
        auto take = [&] {
            ++pos_;
            ++column_;
        };
        switch (c) {
            case '+': take(); t.kind = Tok::plus; return t;
            case '-': take(); t.kind = Tok::minus; return t;
            case '*': take(); t.kind = Tok::star; return t;
            case '/': take(); t.kind = Tok::slash; return t;
            case '^': take(); t.kind = Tok::caret; return t;
            case '(': take(); t.kind = Tok::lparen; return t;
            case ')': take(); t.kind = Tok::rparen; return t;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::number;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                t.text += text_[pos_];
                take();
            }
            return t;
        }
        if (c == 'q') {
            take();
            t.kind = Tok::q;
            return t;
        }
        if (c == 'x') {
            take();
            t.kind = Tok::gen;
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_];
                take();
            }
            if (digits.empty()) {
                t.gen_alias = true;  // bare "x" = x1 when dim <= 2
                t.gen_index = 0;
            } else {
                long idx = std::strtol(digits.c_str(), nullptr, 10);
                t.gen_index = static_cast<int>(idx) - 1;
            }
            return t;
        }
        if (c == 'y') {
            take();
            t.kind = Tok::gen;
            t.gen_alias = true;  // "y" = x2 when dim = 2
            t.gen_index = 1;
            return t;
        }
        throw ParseError(Errc::syntax_error, t.line, t.column,
                         std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    int column_;
};

class ExprParser {
public:
    ExprParser(std::vector<Token> tokens, int dim) : tokens_(std::move(tokens)), dim_(dim) {}

    QPoly run() {
        QPoly value = expr();
        if (peek().kind != Tok::end) fail(peek(), "unexpected trailing input");
        return value;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }

    [[noreturn]] static void fail(const Token& at, const std::string& msg) {
        throw ParseError(Errc::syntax_error, at.line, at.column, msg);
    }

    static bool starts_factor(Tok k) {
        return k == Tok::number || k == Tok::q || k == Tok::gen || k == Tok::lparen;
    }

    QPoly expr() {
        bool negate = false;
        if (peek().kind == Tok::plus) {
            advance();
        } else if (peek().kind == Tok::minus) {
            advance();
            negate = true;
        }
        QPoly acc = term();
        if (negate) acc = -acc;
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            bool minus = advance().kind == Tok::minus;
            QPoly rhs = term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    QPoly term() {
        QPoly acc = factor();
        while (true) {
            if (peek().kind == Tok::star) {
                advance();
                acc = acc * factor();
            } else if (starts_factor(peek().kind)) {
                acc = acc * factor();  // juxtaposition
            } else {
                return acc;
            }
        }
    }

    QPoly factor() {
        QPoly b = base();
        if (peek().kind == Tok::caret) {
            advance();
            int e = signed_int();
            b = b.pow(e);
        }
        return b;
    }

    int signed_int() {
        bool negative = false;
        if (peek().kind == Tok::plus) {
            advance();
        } else if (peek().kind == Tok::minus) {
            advance();
            negative = true;
        }
        const Token& t = peek();
        if (t.kind != Tok::number) fail(t, "expected integer exponent");
        advance();
        if (t.text.size() > 6) fail(t, "exponent too large");
        int value = static_cast<int>(std::strtol(t.text.c_str(), nullptr, 10));
        return negative ? -value : value;
    }

    QPoly base() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::q:
                advance();
                return QPoly::constant(dim_, QScalar::q());
            case Tok::gen: {
                advance();
                if (t.gen_alias && dim_ > 2) {
                    throw ParseError(Errc::unknown_generator, t.line, t.column,
                                     "bare generator aliases require dim <= 2; use x1..x" +
                                         std::to_string(dim_));
                }
                if (t.gen_index < 0 || t.gen_index >= dim_) {
                    throw ParseError(Errc::unknown_generator, t.line, t.column,
                                     "generator x" + std::to_string(t.gen_index + 1) +
                                         " out of range for dimension " + std::to_string(dim_));
                }
                return QPoly::generator(dim_, t.gen_index);
            }
            case Tok::number: {
                advance();
                boost::multiprecision::cpp_int num(t.text);
                if (peek().kind == Tok::slash) {
                    advance();
                    const Token& d = peek();
                    if (d.kind != Tok::number) fail(d, "expected denominator");
                    advance();
                    boost::multiprecision::cpp_int den(d.text);
                    if (den == 0) fail(d, "zero denominator");
                    return QPoly::constant(dim_, QScalar(Rational(num, den)));
                }
                return QPoly::constant(dim_, QScalar(Rational(num)));
            }
            case Tok::lparen: {
                advance();
                QPoly inner = expr();
                if (peek().kind != Tok::rparen) fail(peek(), "expected ')'");
                advance();
                return inner;
            }
            default:
                fail(t, "expected a number, q, a generator, or '('");
        }
    }

    std::vector<Token> tokens_;
    int dim_;
    std::size_t pos_ = 0;
};

QPoly parse_expr_at(std::string_view text, int dim, int line, int column) {
    Lexer lex(text, line, column);
    ExprParser parser(lex.run(), dim);
    return parser.run();
}

// --- printing ---------------------------------------------------------

// coefficient piece without sign: "3", "q", "q^-1", "3/2*q^2"
std::string scalar_piece(int exponent, const Rational& abs_coeff) {
    if (exponent == 0) return rational_str(abs_coeff);
    std::string qpart = exponent == 1 ? "q" : "q^" + std::to_string(exponent);
    if (abs_coeff == 1) return qpart;
    return rational_str(abs_coeff) + "*" + qpart;
}

struct Atom {
    bool negative;
    std::string body;
};

std::string join_atoms(const std::vector<Atom>& atoms) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i == 0) {
            if (atoms[i].negative) out += "-";
        } else {
            out += atoms[i].negative ? " - " : " + ";
        }
        out += atoms[i].body;
    }
    return out;
}

}  // namespace

std::string print_scalar(const QScalar& s) {
    if (s.is_zero()) return "0";
    std::vector<Atom> atoms;
    for (const auto& [k, c] : s.terms()) {
        atoms.push_back({c < 0, scalar_piece(k, abs(c))});
    }
    return join_atoms(atoms);
}

std::string print_canonical(const QPoly& f) {
    if (f.is_zero()) return "0";
    const bool alias = f.dim() == 2;
    auto gen_name = [&](int i) {
        if (alias) return std::string(i == 0 ? "x" : "y");
        return "x" + std::to_string(i + 1);
    };
    std::vector<Atom> atoms;
    for (const auto& [d, c] : f.terms()) {
        std::string mono;
        for (int i = 0; i < f.dim(); ++i) {
            if (d[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += gen_name(i);
            if (d[i] != 1) mono += "^" + std::to_string(d[i]);
        }
        if (mono.empty()) {
            // constant term: its q-terms join the top-level sum directly
            for (const auto& [k, coef] : c.terms()) {
                atoms.push_back({coef < 0, scalar_piece(k, abs(coef))});
            }
        } else if (c.term_count() == 1) {
            const auto& [k, coef] = *c.terms().begin();
            std::string piece = scalar_piece(k, abs(coef));
            atoms.push_back({coef < 0, piece == "1" ? mono : piece + "*" + mono});
        } else {
            atoms.push_back({false, "(" + print_scalar(c) + ")*" + mono});
        }
    }
    return join_atoms(atoms);
}

QPoly parse_expr(std::string_view text, int dim) {
    if (dim < 1) throw Error(Errc::dimension_mismatch, "dimension must be >= 1");
    return parse_expr_at(text, dim, 1, 1);
}

namespace {

struct RawEntry {
    std::string key;
    std::string value;
    int line;
    int value_column;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<double> parse_point(std::string_view value, int line, int column) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        std::string_view piece =
            trim(value.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (piece.empty()) {
            throw ParseError(Errc::syntax_error, line, column, "empty coordinate in point");
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (ec != std::errc() || ptr != piece.data() + piece.size()) {
            throw ParseError(Errc::syntax_error, line, column,
                             "bad coordinate '" + std::string(piece) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// "X[3]" -> 2; nullopt when key is not name[...]
std::optional<int> bracket_index(std::string_view key, std::string_view name) {
    if (key.size() < name.size() + 3 || key.substr(0, name.size()) != name) return std::nullopt;
    if (key[name.size()] != '[' || key.back() != ']') return std::nullopt;
    std::string_view digits = key.substr(name.size() + 1, key.size() - name.size() - 2);
    if (digits.empty()) return std::nullopt;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    }
    return static_cast<int>(std::strtol(std::string(digits).c_str(), nullptr, 10)) - 1;
}

}  // namespace

SystemDef parse_system(std::string_view text) {
    std::vector<RawEntry> entries;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
        ++line_no;
        std::string_view stripped = trim(line);
        if (!stripped.empty() && stripped[0] != '#') {
            std::size_t eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ParseError(Errc::syntax_error, line_no, 1, "expected 'key = value'");
            }
            RawEntry e;
            e.key = std::string(trim(line.substr(0, eq)));
            e.value = std::string(trim(line.substr(eq + 1)));
            e.line = line_no;
            e.value_column = static_cast<int>(eq) + 2;
            if (e.key.empty()) {
                throw ParseError(Errc::syntax_error, line_no, 1, "missing key before '='");
            }
            entries.push_back(std::move(e));
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }

    SystemDef def;
    const RawEntry* dim_entry = nullptr;
    for (const auto& e : entries) {
        if (e.key == "dim") {
            if (dim_entry) {
                throw ParseError(Errc::syntax_error, e.line, 1, "duplicate key 'dim'");
            }
            dim_entry = &e;
        }
    }
    if (!dim_entry) throw Error(Errc::missing_field, "dim");
    try {
        Rational d = parse_rational(dim_entry->value);
        if (denominator(d) != 1 || d < 1 || d > 64) throw Error(Errc::bad_q_value, "");
        def.dim = d.convert_to<int>();
    } catch (const Error&) {
        throw ParseError(Errc::syntax_error, dim_entry->line, dim_entry->value_column,
                         "dim must be a positive integer");
    }

    std::vector<std::optional<QPoly>> images(static_cast<std::size_t>(def.dim));
    std::vector<std::optional<QPoly>> second(static_cast<std::size_t>(def.dim));
    bool has_second = false;
    bool has_q = false;

    for (const auto& e : entries) {
        if (e.key == "dim") continue;
        if (e.key == "q") {
            if (has_q) throw ParseError(Errc::syntax_error, e.line, 1, "duplicate key 'q'");
            has_q = true;
            if (e.value == "symbolic") {
                def.q_symbolic = true;
            } else {
                def.q_symbolic = false;
                def.q_value = parse_rational(e.value);  // throws BadQValue
                if (def.q_value <= 0 || def.q_value > 1) {
                    throw Error(Errc::bad_q_value,
                                "q = " + e.value + " outside (0, 1] (line " +
                                    std::to_string(e.line) + ")");
                }
            }
            continue;
        }
        if (e.key == "point") {
            if (def.initial_point) {
                throw ParseError(Errc::syntax_error, e.line, 1, "duplicate key 'point'");
            }
            auto p = parse_point(e.value, e.line, e.value_column);
            if (static_cast<int>(p.size()) != def.dim) {
                throw ParseError(Errc::syntax_error, e.line, e.value_column,
                                 "point has " + std::to_string(p.size()) + " coordinates, expected " +
                                     std::to_string(def.dim));
            }
            def.initial_point = std::move(p);
            continue;
        }
        if (e.key == "notes") {
            def.notes = e.value;
            continue;
        }
        auto handle_images = [&](std::vector<std::optional<QPoly>>& slots, int idx,
                                 const char* name) {
            if (idx < 0 || idx >= def.dim) {
                throw ParseError(Errc::syntax_error, e.line, 1,
                                 std::string(name) + " index out of range for dim " +
                                     std::to_string(def.dim));
            }
            if (slots[static_cast<std::size_t>(idx)]) {
                throw ParseError(Errc::syntax_error, e.line, 1, "duplicate key '" + e.key + "'");
            }
            slots[static_cast<std::size_t>(idx)] =
                parse_expr_at(e.value, def.dim, e.line, e.value_column);
        };
        if (auto idx = bracket_index(e.key, "X")) {
            handle_images(images, *idx, "X");
            continue;
        }
        if (auto idx = bracket_index(e.key, "Y")) {
            has_second = true;
            handle_images(second, *idx, "Y");
            continue;
        }
        throw ParseError(Errc::syntax_error, e.line, 1, "unknown key '" + e.key + "'");
    }

    for (int i = 0; i < def.dim; ++i) {
        if (!images[static_cast<std::size_t>(i)]) {
            throw Error(Errc::missing_field, "X[" + std::to_string(i + 1) + "]");
        }
        def.field_images.push_back(*images[static_cast<std::size_t>(i)]);
    }
    if (has_second) {
        std::vector<QPoly> ys;
        for (int i = 0; i < def.dim; ++i) {
            if (!second[static_cast<std::size_t>(i)]) {
                throw Error(Errc::missing_field, "Y[" + std::to_string(i + 1) + "]");
            }
            ys.push_back(*second[static_cast<std::size_t>(i)]);
        }
        def.second_images = std::move(ys);
    }
    return def;
}

SystemDef load_system(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str());
}

}  // namespace qns
