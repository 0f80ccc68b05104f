#include "relident/algebra/parse.hpp"

#include <cctype>

namespace relident {

namespace {

Fraction simplify(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("division by zero");
    if (num.is_zero()) return {Poly(), Poly(1)};
    if (den.is_constant()) return {num * (Rational(1) / den.constant_value()), Poly(1)};
    if (auto q = divide_exact(num, den)) return {std::move(*q), Poly(1)};
    if (auto q = divide_exact(den, num)) {
        Fraction f{Poly(1), std::move(*q)};
        const Rational lc = f.den.canonical_leading_term().coeff;
        return {f.num * (Rational(1) / lc), f.den * (Rational(1) / lc)};
    }
    const Rational lc = den.canonical_leading_term().coeff;
    return {num * (Rational(1) / lc), den * (Rational(1) / lc)};
}

Fraction add(const Fraction& a, const Fraction& b, bool subtract) {
    Poly rhs = subtract ? -b.num : b.num;
    if (a.den == b.den) return simplify(a.num + rhs, a.den);
    return simplify(a.num * b.den + rhs * a.den, a.den * b.den);
}

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    Fraction parse() {
        Fraction f = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

  private:
    [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

    [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
        int line = 1;
        int column = 1;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(message, line, column);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Fraction expression() {
        Fraction acc = term();
        while (true) {
            if (accept('+')) {
                acc = add(acc, term(), false);
            } else if (accept('-')) {
                acc = add(acc, term(), true);
            } else {
                return acc;
            }
        }
    }

    Fraction term() {
        Fraction acc = unary();
        while (true) {
            if (accept('*')) {
                Fraction rhs = unary();
                acc = simplify(acc.num * rhs.num, acc.den * rhs.den);
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Fraction rhs = unary();
                if (rhs.num.is_zero()) fail_at("division by zero", at);
                acc = simplify(acc.num * rhs.den, acc.den * rhs.num);
            } else {
                return acc;
            }
        }
    }

    Fraction unary() {
        if (accept('-')) {
            Fraction f = unary();
            return {-f.num, f.den};
        }
        if (accept('+')) return unary();
        return power();
    }

    Fraction power() {
        Fraction base = primary();
        if (accept('^')) {
            skip_space();
            const std::size_t at = pos_;
            bool paren = accept('(');
            skip_space();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail_at("expected a nonnegative integer exponent", at);
            const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (e > 10000) fail_at("exponent too large", at);
            if (paren && !accept(')')) fail("expected ')'");
            return {base.num.pow(static_cast<std::uint32_t>(e)), base.den.pow(static_cast<std::uint32_t>(e))};
        }
        return base;
    }

    Fraction primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Fraction f = expression();
            if (!accept(')')) fail("expected ')'");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    Fraction number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        Rational value(std::string(text_.substr(start, pos_ - start)));
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            const std::size_t fs = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (fs == pos_) fail("expected digits after decimal point");
            Integer scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, pos_ - fs);
            value += Rational(Integer(std::string(text_.substr(fs, pos_ - fs))), scale);
            value.canonicalize();
        }
        return {Poly(value), Poly(1)};
    }

    Fraction identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (pos_ < text_.size() && text_[pos_] == '[') {
            std::size_t p = pos_ + 1;
            const std::size_t ds = p;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
            if (p == ds || p >= text_.size() || text_[p] != ']') fail_at("malformed derivative index", pos_);
            pos_ = p + 1;
        }
        return {Poly::var(text_.substr(start, pos_ - start)), Poly(1)};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Fraction parse_fraction(std::string_view text) { return Parser(text).parse(); }

Poly parse_poly(std::string_view text) {
    Fraction f = parse_fraction(text);
    if (!f.den.is_constant()) throw ParseError("expected a polynomial, found a rational function", 1, 1);
    return f.num * (Rational(1) / f.den.constant_value());
}

}  // namespace relident
