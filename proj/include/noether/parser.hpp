#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "polynomial.hpp"

namespace noether {

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(size_t p, const std::string& msg)
        : std::runtime_error("parse error at position " + std::to_string(p) + ": " + msg),
          pos(p) {}
};

// Recursive-descent parser for the polynomial grammar:
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := base ['^' nat]
//   base    := rational | variable | '(' expr ')'
//   rational:= nat ['/' nat]
// Whitespace insensitive; no implicit multiplication.
class PolyParser {
  public:
    PolyParser(std::string_view text, const RingDescriptor& ring)
        : s_(text), ring_(ring) {}

    Polynomial parse() {
        Polynomial p = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

  private:
    Polynomial parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') { ++pos_; neg = true; }
        else if (peek() == '+') { ++pos_; }
        Polynomial p = parse_term();
        if (neg) p = -p;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+') { ++pos_; p = p + parse_term(); }
            else if (c == '-') { ++pos_; p = p - parse_term(); }
            else break;
        }
        return p;
    }

    Polynomial parse_term() {
        Polynomial p = parse_factor();
        while (true) {
            skip_ws();
            if (peek() == '*') { ++pos_; p = p * parse_factor(); }
            else break;
        }
        return p;
    }

    Polynomial parse_factor() {
        Polynomial b = parse_base();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            long n = parse_nat();
            b = b.pow(static_cast<int>(n));
        }
        return b;
    }

    Polynomial parse_base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial p = parse_expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t at = pos_;
            Int num = parse_int();
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                size_t dat = pos_;
                Int den = parse_int();
                if (den == 0) { pos_ = dat; fail("division by zero literal"); }
                return Polynomial::constant(ring_, Rat(num) / Rat(den));
            }
            (void)at;
            return Polynomial::constant(ring_, Rat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t at = pos_;
            std::string name = parse_name();
            int idx = ring_.var_index(name);
            if (idx < 0) { pos_ = at; fail("unknown variable '" + name + "'"); }
            return Polynomial::variable(ring_, idx);
        }
        fail(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'");
        return Polynomial(ring_);  // unreachable
    }

    Int parse_int() {
        skip_ws();
        size_t at = pos_;
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits += s_[pos_++];
        if (digits.empty()) { pos_ = at; fail("expected integer"); }
        return Int(digits);
    }

    long parse_nat() {
        Int n = parse_int();
        if (!n.fits_slong_p()) fail("exponent too large");
        return n.get_si();
    }

    std::string parse_name() {
        std::string name;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            name += s_[pos_++];
        return name;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    std::string_view s_;
    const RingDescriptor& ring_;
    size_t pos_ = 0;
};

inline Polynomial parse_polynomial(std::string_view text, const RingDescriptor& ring) {
    return PolyParser(text, ring).parse();
}

// Convenience for tests and constructors working over P3.
inline Polynomial pp(std::string_view text, const RingDescriptor& ring = RingDescriptor::p3()) {
    return parse_polynomial(text, ring);
}

}  // namespace noether
