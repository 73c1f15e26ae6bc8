#pragma once

#include <vector>

#include "kquant/lie_algebra.hpp"
#include "kquant/linalg.hpp"
#include "kquant/polynomial.hpp"

namespace kquant {

// adj_a = -Σ c_aj^k y_j ∂_{y_k}, the generator of f ↦ f(exp(-ta)·y). On
// distributions it acts on the right as p ↦ -Σ c_aj^k x_k ∂_{x_j} p.
inline DiffOperator adjoint_field(const LieAlgebra& L, int a) {
    const std::size_t d = L.dim();
    DiffOperator out(d);
    for (int j = 0; j < static_cast<int>(d); ++j)
        for (const auto& [k, v] : L.bracket(a, j))
            out.add_term(unit_exponents(d, k), Polynomial::variable(d, j, Coord::y) * Rational(-v));
    return out;
}

// tr[(ad y)^{2k}] with ad y = Σ_a y_a ad(x_a) and (ad x_a)_{kj} = c_aj^k.
inline Polynomial trace_power_poly(const LieAlgebra& L, int k, Coord coord = Coord::y) {
    const std::size_t d = L.dim();
    std::vector<std::vector<Polynomial>> ad(d, std::vector<Polynomial>(d, Polynomial(d, coord)));
    for (int a = 0; a < static_cast<int>(d); ++a)
        for (int j = 0; j < static_cast<int>(d); ++j)
            for (const auto& [row, v] : L.bracket(a, j)) ad[row][j] += Polynomial::variable(d, a, coord) * v;
    auto mul = [&](const auto& A, const auto& B) {
        std::vector<std::vector<Polynomial>> C(d, std::vector<Polynomial>(d, Polynomial(d, coord)));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t m = 0; m < d; ++m) {
                if (A[i][m].is_zero()) continue;
                for (std::size_t j = 0; j < d; ++j)
                    if (!B[m][j].is_zero()) C[i][j] += A[i][m] * B[m][j];
            }
        return C;
    };
    auto power = ad;
    for (int i = 1; i < 2 * k; ++i) power = mul(power, ad);
    Polynomial tr(d, coord);
    for (std::size_t i = 0; i < d; ++i) tr += power[i][i];
    return tr;
}

// Distributions (x) are tested with the right action p·adj_i; functions (y)
// with the left action adj_i f.
inline bool is_invariant(const LieAlgebra& L, const Polynomial& p) {
    for (int a = 0; a < static_cast<int>(L.dim()); ++a) {
        DiffOperator adj = adjoint_field(L, a);
        Polynomial r = p.coord() == Coord::x ? apply_right_operator(p, adj) : apply(adj, p);
        if (!r.is_zero()) return false;
    }
    return true;
}

struct InvariantBasis {
    int degree = 0;
    std::vector<Polynomial> elements;
};

// Joint kernel of the adjoint fields on S^{≤d}(g). The action preserves
// degree, so each homogeneous piece is solved separately.
inline InvariantBasis find_invariants(const LieAlgebra& L, int d) {
    const std::size_t dim = L.dim();
    InvariantBasis out{d, {}};
    std::vector<DiffOperator> fields;
    for (int a = 0; a < static_cast<int>(dim); ++a) fields.push_back(adjoint_field(L, a));
    for (int t = 0; t <= d; ++t) {
        auto monos = monomials_of_degree(dim, t);
        std::map<std::pair<int, Exponents>, std::size_t> row_of;
        Matrix m;
        for (std::size_t col = 0; col < monos.size(); ++col) {
            Polynomial p = Polynomial::monomial(monos[col]);
            for (int a = 0; a < static_cast<int>(dim); ++a) {
                const Polynomial image = apply_right_operator(p, fields[a]);
                for (const auto& [e, c] : image.terms()) {
                    auto [it, inserted] = row_of.try_emplace({a, e}, m.size());
                    if (inserted) m.emplace_back(monos.size(), Rational(0));
                    m[it->second][col] += c;
                }
            }
        }
        for (auto& v : nullspace(m, monos.size())) {
            make_primitive(v);
            Polynomial p(dim);
            for (std::size_t col = 0; col < monos.size(); ++col) p.add_term(monos[col], v[col]);
            out.elements.push_back(p);
        }
    }
    return out;
}

}  // namespace kquant
