#include <puiseux/expr.hpp>

#include <cctype>
#include <vector>

namespace puiseux {

namespace {

enum class Tok { integer, symbol, xvar, yvar, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;   // integer digits or symbol name
    std::int64_t index; // x[i] index
    std::size_t pos;
};

class Lexer {
public:
    Lexer(const std::string& s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws();
            if (i_ >= s_.size()) {
                out.push_back({Tok::end, "", 0, i_});
                return out;
            }
            const char c = s_[i_];
            const std::size_t start = i_;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                    digits += s_[i_++];
                out.push_back({Tok::integer, digits, 0, start});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                if (c == 'x' && peek_at(i_ + 1) == '[') {
                    i_ += 2;
                    skip_ws();
                    bool neg = false;
                    if (i_ < s_.size() && s_[i_] == '-') {
                        neg = true;
                        ++i_;
                    }
                    std::string digits;
                    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                        digits += s_[i_++];
                    skip_ws();
                    if (digits.empty() || i_ >= s_.size() || s_[i_] != ']')
                        throw parse_error("malformed x[...] variable", start);
                    ++i_;
                    std::int64_t idx = std::stoll(digits);
                    if (neg) idx = -idx;
                    out.push_back({Tok::xvar, "", idx, start});
                    continue;
                }
                std::string name = read_name();
                if (name == "y")
                    out.push_back({Tok::yvar, "", 0, start});
                else if (name == "x")
                    throw parse_error("bare 'x' is not a variable; write x[i]", start);
                else
                    out.push_back({Tok::symbol, name, 0, start});
                continue;
            }
            ++i_;
            switch (c) {
                case '+': out.push_back({Tok::plus, "", 0, start}); break;
                case '-': out.push_back({Tok::minus, "", 0, start}); break;
                case '*': out.push_back({Tok::star, "", 0, start}); break;
                case '/': out.push_back({Tok::slash, "", 0, start}); break;
                case '^': out.push_back({Tok::caret, "", 0, start}); break;
                case '(': out.push_back({Tok::lparen, "", 0, start}); break;
                case ')': out.push_back({Tok::rparen, "", 0, start}); break;
                default: throw parse_error(std::string("unexpected character '") + c + "'", start);
            }
        }
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek_at(std::size_t j) const { return j < s_.size() ? s_[j] : '\0'; }

    // Identifier: letter, then alnum/underscore, with balanced {...} groups
    // admitted so names like a_{0,0,2} lex as one token.
    std::string read_name() {
        std::string name;
        name += s_[i_++];
        while (i_ < s_.size()) {
            const char c = s_[i_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                name += c;
                ++i_;
            } else if (c == '{') {
                const std::size_t open = i_;
                name += c;
                ++i_;
                while (i_ < s_.size() && s_[i_] != '}') {
                    const char b = s_[i_];
                    if (!std::isdigit(static_cast<unsigned char>(b)) && b != ',' && b != '-')
                        throw parse_error("unexpected character in {...} of a symbol name", i_);
                    name += b;
                    ++i_;
                }
                if (i_ >= s_.size()) throw parse_error("unterminated '{' in symbol name", open);
                name += '}';
                ++i_;
            } else {
                break;
            }
        }
        return name;
    }
};

class Parser {
public:
    Parser(std::vector<Token> toks, int r, ScalarMode mode, bool allowVars)
        : toks_(std::move(toks)), r_(r), mode_(mode), allowVars_(allowVars) {}

    XYPolynomial parse() {
        XYPolynomial out = expr();
        expect(Tok::end, "trailing input after expression");
        return out;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    int r_;
    ScalarMode mode_;
    bool allowVars_;

    const Token& cur() const { return toks_[at_]; }
    void advance() { ++at_; }
    void expect(Tok k, const char* msg) {
        if (cur().kind != k) throw parse_error(msg, cur().pos);
        advance();
    }

    XYPolynomial constant(const Scalar& c) {
        XYPolynomial p(r_, mode_);
        p.add_term(MultiIndex::zero(r_), 0, c);
        return p;
    }

    XYPolynomial expr() {
        bool neg = false;
        if (cur().kind == Tok::plus) {
            advance();
        } else if (cur().kind == Tok::minus) {
            neg = true;
            advance();
        }
        XYPolynomial acc = term();
        if (neg) acc = acc.scale(-Scalar::one(mode_));
        while (cur().kind == Tok::plus || cur().kind == Tok::minus) {
            const bool sub = cur().kind == Tok::minus;
            advance();
            XYPolynomial t = term();
            acc = sub ? acc - t : acc + t;
        }
        return acc;
    }

    XYPolynomial term() {
        XYPolynomial acc = factor();
        while (cur().kind == Tok::star || cur().kind == Tok::slash) {
            const bool div = cur().kind == Tok::slash;
            advance();
            XYPolynomial f = factor();
            if (div) {
                // Scalar divisor only.
                if (f.size() != 1 || !f.terms().begin()->first.x.is_zero() ||
                    f.terms().begin()->first.y != 0)
                    throw parse_error("division by a non-scalar expression", cur().pos);
                acc = acc.scale(Scalar::one(mode_) / f.terms().begin()->second);
            } else {
                acc = acc * f;
            }
        }
        return acc;
    }

    XYPolynomial factor() {
        XYPolynomial base = atom();
        if (cur().kind != Tok::caret) return base;
        advance();
        bool neg = false;
        if (cur().kind == Tok::minus) {
            neg = true;
            advance();
        }
        if (cur().kind != Tok::integer) throw parse_error("exponent must be an integer", cur().pos);
        const std::int64_t e = std::stoll(cur().text);
        advance();
        if (!neg) {
            XYPolynomial acc = constant(Scalar::one(mode_));
            for (std::int64_t i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        // Negative power: scalar base, or a pure x-monomial (Laurent).
        if (base.size() != 1) throw parse_error("negative power of a sum", cur().pos);
        const auto& [key, c] = *base.terms().begin();
        if (key.y != 0) throw parse_error("negative power of y is not allowed", cur().pos);
        XYPolynomial out(r_, mode_);
        out.add_term(key.x * (-e), 0, c.pow(-e));
        return out;
    }

    XYPolynomial atom() {
        switch (cur().kind) {
            case Tok::integer: {
                mpz_class v(cur().text);
                advance();
                if (cur().kind == Tok::slash && at_ + 1 < toks_.size() &&
                    toks_[at_ + 1].kind == Tok::integer) {
                    advance();
                    mpz_class d(cur().text);
                    advance();
                    if (mode_ == ScalarMode::rational) return constant(Scalar::rational(v, d));
                    return constant(Scalar::symbolic(SymScalar::rational(v, d)));
                }
                return constant(Scalar::integer(mode_, v));
            }
            case Tok::symbol: {
                const Scalar s = Scalar::symbol(cur().text);
                advance();
                return constant(s);
            }
            case Tok::xvar: {
                if (!allowVars_) throw parse_error("variable x[i] not allowed here", cur().pos);
                const std::int64_t i = cur().index;
                if (i < 1 || i > r_)
                    throw parse_error("x index out of range 1..r", cur().pos);
                advance();
                XYPolynomial p(r_, mode_);
                p.add_term(MultiIndex::unit(r_, static_cast<int>(i - 1)), 0, Scalar::one(mode_));
                return p;
            }
            case Tok::yvar: {
                if (!allowVars_) throw parse_error("variable y not allowed here", cur().pos);
                advance();
                XYPolynomial p(r_, mode_);
                p.add_term(MultiIndex::zero(r_), 1, Scalar::one(mode_));
                return p;
            }
            case Tok::lparen: {
                advance();
                XYPolynomial inner = expr();
                expect(Tok::rparen, "expected ')'");
                return inner;
            }
            default: throw parse_error("expected a value", cur().pos);
        }
    }
};

} // namespace

ScalarMode deduce_mode(const std::string& text) {
    auto toks = Lexer(text).run();
    for (const auto& t : toks)
        if (t.kind == Tok::symbol) return ScalarMode::symbolic;
    return ScalarMode::rational;
}

XYPolynomial parse_polynomial(const std::string& text, int r) {
    const ScalarMode mode = deduce_mode(text);
    Parser p(Lexer(text).run(), r, mode, true);
    return p.parse();
}

Scalar parse_scalar(const std::string& text, int r, std::optional<ScalarMode> mode) {
    const ScalarMode m = mode ? *mode : deduce_mode(text);
    Parser p(Lexer(text).run(), r, m, false);
    const XYPolynomial poly = p.parse();
    if (poly.is_zero()) return Scalar::zero(m);
    return poly.terms().begin()->second;
}

} // namespace puiseux
