#pragma once

#include "kquant/enveloping.hpp"
#include "kquant/star.hpp"

namespace kquant {

// The algebra map U(g) -> (S(g), ⋆) sending generators to themselves. A PBW
// monomial x_{i1}...x_{ik} is sent to x_{i1} ⋆ (x_{i2} ⋆ (... ⋆ x_{ik})).
// Elements of degree above the table's order are refused unless truncation is
// allowed, in which case every product keeps orders n ≤ max_n only.
inline Polynomial i_alg(const UEnvElement& u, const StarContext& ctx, bool allow_truncation = false) {
    const std::size_t d = ctx.algebra().dim();
    if (!allow_truncation && u.degree() > ctx.max_n())
        throw CoverageError(ctx.max_n() + 1, "i_alg of a degree-" + std::to_string(u.degree()) +
                                                 " element needs graph orders n <= " + std::to_string(u.degree()));
    Polynomial out(d);
    std::map<Exponents, Polynomial> memo;
    for (const auto& [e, c] : u.terms()) {
        std::vector<int> word;
        for (std::size_t i = 0; i < d; ++i)
            for (int r = 0; r < e[i]; ++r) word.push_back(static_cast<int>(i));
        Polynomial acc = Polynomial::constant(d, 1);
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            acc = star_truncated(Polynomial::variable(d, *it), acc, ctx).value;
        out += acc * c;
    }
    return out;
}

// Inverse of i_alg by back-substitution on the top degree.
inline UEnvElement kappa(const Polynomial& p, const StarContext& ctx, bool allow_truncation = false) {
    const std::size_t d = ctx.algebra().dim();
    if (!allow_truncation && p.degree() > ctx.max_n())
        throw CoverageError(ctx.max_n() + 1, "kappa of a degree-" + std::to_string(p.degree()) +
                                                 " polynomial needs graph orders n <= " + std::to_string(p.degree()));
    UEnvElement u(d);
    Polynomial rest = p;
    while (!rest.is_zero()) {
        UEnvElement lead(d);
        const Polynomial top = rest.homogeneous_component(rest.degree());
        for (const auto& [e, c] : top.terms()) lead.add_term(e, c);
        u += lead;
        rest -= i_alg(lead, ctx, true);
    }
    return u;
}

}  // namespace kquant
