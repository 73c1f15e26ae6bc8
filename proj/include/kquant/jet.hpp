#pragma once

#include "kquant/polynomial.hpp"

namespace kquant {

// Taylor jet of a function on g, kept up to degree `order`.
struct JetSeries {
    int order = 0;
    Polynomial poly;  // y-coordinates
};

namespace detail {

// Σ_b j_b ∂_x^b p: the product of the distribution p with the function whose
// Taylor coefficients are j_b, since <pq, f> = <p, q f>.
inline Polynomial apply_jet(const Polynomial& p, const Polynomial& jet) {
    Polynomial out(p.dim(), Coord::x);
    const int top = p.degree();
    for (const auto& [b, c] : jet.terms())
        if (total_degree(b) <= top) out += p.derivative(b) * c;
    return out;
}

}  // namespace detail

inline Polynomial multiply_jet(const Polynomial& p, const JetSeries& q) {
    if (p.coord() != Coord::x || q.poly.coord() != Coord::y)
        throw CoordinateMismatch("multiply_jet expects a distribution in x and a jet in y");
    if (q.order < p.degree())
        throw JetOrderError("jet of order " + std::to_string(q.order) + " cannot multiply a degree-" +
                            std::to_string(p.degree()) + " distribution");
    return detail::apply_jet(p, q.poly);
}

}  // namespace kquant
