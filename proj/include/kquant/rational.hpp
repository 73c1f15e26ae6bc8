#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "kquant/errors.hpp"

namespace kquant {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p" or "p/q" with q > 0.
inline Rational parse_rational(const std::string& text) {
    auto valid_int = [](const std::string& s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw ParseError("malformed rational '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);
    Integer d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    Rational r{Integer(num), d};
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Integer factorial(unsigned n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Integer binomial(unsigned n, unsigned k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

inline Integer multi_factorial(const std::vector<int>& exps) {
    Integer f = 1;
    for (int e : exps) f *= factorial(static_cast<unsigned>(e));
    return f;
}

inline Rational pow(const Rational& r, unsigned k) {
    Rational out = 1;
    for (unsigned i = 0; i < k; ++i) out *= r;
    return out;
}

// Rational lower bound for e, used wherever a bound must stay rigorous.
inline Rational e_lower_bound() { return make_rational(2718, 1000); }

}  // namespace kquant
