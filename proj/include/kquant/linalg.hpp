#pragma once

#include <vector>

#include "kquant/rational.hpp"

namespace kquant {

using Matrix = std::vector<std::vector<Rational>>;

// Basis of {v : A v = 0}, one vector per free column of the reduced row
// echelon form.
inline std::vector<std::vector<Rational>> nullspace(Matrix a, std::size_t cols) {
    const std::size_t rows = a.size();
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Scale to coprime integers with the first nonzero entry positive.
inline void make_primitive(std::vector<Rational>& v) {
    Integer l = 1, g = 0;
    for (const auto& x : v)
        if (x != 0) l = lcm(l, Integer(x.get_den()));
    for (auto& x : v) {
        x *= l;
        if (x != 0) g = gcd(g, Integer(x.get_num()));
    }
    if (g == 0) return;
    int sign = 1;
    for (const auto& x : v)
        if (x != 0) {
            sign = x < 0 ? -1 : 1;
            break;
        }
    for (auto& x : v) x /= g * sign;
}

}  // namespace kquant
