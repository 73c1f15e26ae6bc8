#pragma once

#include <cctype>
#include <string>

#include "kquant/lie_algebra.hpp"
#include "kquant/polynomial.hpp"

namespace kquant {

// expr := term (('+'|'-') term)*, term := rat ('*' var)* | var ('*' var)*,
// var := name ('^' posint)?, rat := int | int '/' posint. Whitespace is ignored
// and a leading sign is accepted.
inline Polynomial parse_poly_expr(const std::string& text, const LieAlgebra& L) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    const std::size_t d = L.dim();
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) -> Polynomial {
        throw ParseError("expression '" + text + "': " + msg);
    };
    auto digits = [&] {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(start, pos - start);
    };
    auto is_name_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto parse_var = [&](Exponents& e) {
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        std::string name = s.substr(start, pos - start);
        int idx = L.index_of(name);
        if (idx < 0) fail("unknown identifier '" + name + "'");
        int power = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            if (pos < s.size() && s[pos] == '-') fail("negative exponent");
            std::string p = digits();
            if (p.empty()) fail("expected exponent after '^'");
            if (p.size() > 3) fail("exponent too large");
            power = std::stoi(p);
            if (power == 0) fail("exponent must be positive");
        }
        e[idx] += power;
    };
    if (s.empty()) fail("empty expression");
    Polynomial out(d);
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            fail("expected '+' or '-' at position " + std::to_string(pos));
        }
        first = false;
        if (pos >= s.size()) fail("missing term");
        Rational coef = 1;
        Exponents e(d, 0);
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::string num = digits();
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                std::string den = digits();
                if (den.empty()) fail("malformed rational");
                coef = parse_rational(num + "/" + den);
                if (coef.get_den() == 0) fail("malformed rational");
            } else {
                coef = parse_rational(num);
            }
        } else if (is_name_start(s[pos])) {
            parse_var(e);
        } else {
            fail(std::string("unexpected character '") + s[pos] + "'");
        }
        while (pos < s.size() && s[pos] == '*') {
            ++pos;
            if (pos >= s.size() || !is_name_start(s[pos])) fail("expected a basis name after '*'");
            parse_var(e);
        }
        out.add_term(e, coef * sign);
    }
    return out;
}

}  // namespace kquant
