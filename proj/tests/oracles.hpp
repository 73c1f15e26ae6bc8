#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kquant/kquant.hpp"

namespace kquant {

// Readable failure messages in GoogleTest.
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << format(p); }
inline void PrintTo(const UEnvElement& u, std::ostream* os) { *os << format(u); }
inline void PrintTo(const DiffOperator& d, std::ostream* os) { *os << format(d); }

}  // namespace kquant

namespace oracle {

using namespace kquant;

inline Rational evaluate(const Polynomial& p, const std::vector<Rational>& pt) {
    Rational s = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= pt[i];
        s += t;
    }
    return s;
}

// <p, f> by literally differentiating f with p(∂) and evaluating at 0.
inline Rational pairing_by_derivatives(const Polynomial& p, const Polynomial& f) {
    Rational s = 0;
    for (const auto& [e, c] : p.terms()) s += c * f.derivative(e).coefficient(Exponents(f.dim(), 0));
    return s;
}

// Every ordered choice of out-edge targets, filtered afterwards.
inline std::set<std::string> brute_force_graphs(int n, bool linear) {
    std::vector<std::string> names{"L", "R"};
    for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    const int t = n + 2;
    std::set<std::string> out;
    long total = 1;
    for (int i = 0; i < n; ++i) total *= t * t;
    for (long code = 0; code < total; ++code) {
        long c = code;
        std::vector<std::pair<int, int>> picks;
        bool ok = true;
        std::vector<int> indeg(n + 1, 0);
        for (int v = 1; v <= n; ++v) {
            int a = c % t;
            c /= t;
            int b = c % t;
            c /= t;
            if (a == b || a == v + 1 || b == v + 1) ok = false;
            if (a >= 2) ++indeg[a - 1];
            if (b >= 2) ++indeg[b - 1];
            picks.push_back({a, b});
        }
        if (!ok) continue;
        if (linear && std::any_of(indeg.begin(), indeg.end(), [](int d) { return d > 1; })) continue;
        std::string s = "K" + std::to_string(n) + ":";
        for (int v = 0; v < n; ++v) {
            if (v) s += ";";
            s += "(" + names[picks[v].first] + "," + names[picks[v].second] + ")";
        }
        out.insert(s);
    }
    return out;
}

inline double angle(std::complex<double> z1, std::complex<double> z2) {
    return std::arg((z2 - z1) / (z2 - std::conj(z1)));
}

// Central differences of the angle coordinates, with branch jumps removed.
inline std::vector<double> fd_jacobian(const AdmissibleGraph& g, const std::vector<std::complex<double>>& free,
                                       double h = 1e-6) {
    const int nf = static_cast<int>(free.size());
    const int k = g.edge_count();
    auto angles = [&](const std::vector<std::complex<double>>& pts) {
        std::vector<double> out;
        auto pos = [&](int v) { return v < nf ? pts[v] : std::complex<double>(0, 1); };
        for (int v = 0; v < g.n; ++v)
            for (const auto& t : g.out[v]) {
                std::complex<double> z2 = t.kind == Target::vertex ? pos(t.index)
                                                                   : std::complex<double>(t.index == 0 ? 0 : 1, 0);
                out.push_back(angle(pos(v), z2));
            }
        return out;
    };
    std::vector<double> J(static_cast<std::size_t>(k) * 2 * nf);
    for (int c = 0; c < 2 * nf; ++c) {
        auto plus = free, minus = free;
        std::complex<double> step = c % 2 == 0 ? std::complex<double>(h, 0) : std::complex<double>(0, h);
        plus[c / 2] += step;
        minus[c / 2] -= step;
        auto a = angles(plus), b = angles(minus);
        for (int r = 0; r < k; ++r) {
            double d = a[r] - b[r];
            while (d > M_PI) d -= 2 * M_PI;
            while (d < -M_PI) d += 2 * M_PI;
            J[r * 2 * nf + c] = d / (2 * h);
        }
    }
    return J;
}

// Symmetrization by listing every ordering of the word.
inline UEnvElement symmetrize_by_words(const LieAlgebra& L, const Polynomial& p) {
    UEnvElement out(L.dim());
    for (const auto& [e, c] : p.terms()) {
        std::vector<int> word;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int r = 0; r < e[i]; ++r) word.push_back(static_cast<int>(i));
        Rational count = 0;
        UEnvElement sum(L.dim());
        std::vector<int> idx(word.size());
        std::iota(idx.begin(), idx.end(), 0);
        do {
            UEnvElement u = UEnvElement::unit(L.dim());
            for (int i : idx) u = uea_mul(L, u, UEnvElement::generator(L.dim(), word[i]));
            sum += u;
            count += 1;
        } while (std::next_permutation(idx.begin(), idx.end()));
        out += (c / count) * sum;
    }
    return out;
}

// Order ≤ 2 terms of the star product written out by hand for linear A = γ:
// fg + A^{ij} ∂_i f ∂_j g + ½ A^{ij}A^{kl} ∂_i∂_k f ∂_j∂_l g
//   + ⅓ A^{ij} ∂_j A^{kl} (∂_i∂_k f ∂_l g - ∂_k f ∂_i∂_l g)
//   + ⅙ ∂_k A^{ij} ∂_j A^{kl} ∂_i f ∂_l g.
inline std::vector<Polynomial> star_orders(const LieAlgebra& L, const Polynomial& f, const Polynomial& g) {
    const int d = static_cast<int>(L.dim());
    auto A = [&](int i, int j) {
        Polynomial p(d);
        for (int k = 0; k < d; ++k) p.add_term(unit_exponents(d, k), L.c(i, j, k) / 2);
        return p;
    };
    auto dA = [&](int i, int j, int k) -> Rational { return L.c(i, j, k) / 2; };
    std::vector<Polynomial> out(3, Polynomial(d));
    out[0] = f * g;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Polynomial aij = A(i, j);
            if (aij.is_zero()) continue;
            out[1] += aij * f.derivative(i) * g.derivative(j);
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    out[2] += aij * A(k, l) * f.derivative(i).derivative(k) * g.derivative(j).derivative(l) *
                              make_rational(1, 2);
                    Rational c = dA(k, l, j);
                    if (c != 0)
                        out[2] += aij *
                                  (f.derivative(i).derivative(k) * g.derivative(l) -
                                   f.derivative(k) * g.derivative(i).derivative(l)) *
                                  (c / 3);
                    Rational e = dA(i, j, k) * dA(k, l, j);
                    if (e != 0) out[2] += f.derivative(i) * g.derivative(l) * (e / 6);
                }
        }
    return out;
}

inline Polynomial random_poly(std::mt19937_64& rng, std::size_t dim, int max_deg, Coord c = Coord::x,
                              int terms = 4) {
    Polynomial p(dim, c);
    std::uniform_int_distribution<int> deg(0, max_deg), coef(-5, 5), den(1, 4);
    for (int t = 0; t < terms; ++t) {
        auto monos = monomials_of_degree(dim, deg(rng));
        std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
        p.add_term(monos[pick(rng)], make_rational(coef(rng), den(rng)));
    }
    return p;
}

inline LieAlgebra bundled(const std::string& name) { return load_algebra(fixtures::algebras().at(name)); }

}  // namespace oracle
