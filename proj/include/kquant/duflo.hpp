#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kquant/enveloping.hpp"
#include "kquant/enveloping_map.hpp"
#include "kquant/invariants.hpp"
#include "kquant/jet.hpp"
#include "kquant/log.hpp"
#include "kquant/star.hpp"
#include "kquant/weights.hpp"

namespace kquant {

// B_n from Σ_{k<n+1} C(n+1,k) B_k = 0, B_0 = 1 (so B_1 = -1/2).
inline Rational bernoulli(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli index must be nonnegative");
    if (n > 1 && n % 2 == 1) return 0;
    std::vector<Rational> b{Rational(1)};
    for (int m = 1; m <= n; ++m) {
        Rational s = 0;
        for (int k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * b[k];
        b.push_back(-s / (m + 1));
    }
    return b[n];
}

namespace detail {

// exp(s) truncated at degree `order`, s without constant term.
inline Polynomial truncated_exp(const Polynomial& s, int order) {
    Polynomial out = Polynomial::constant(s.dim(), 1, s.coord());
    Polynomial term = out;
    for (int m = 1; m <= order; ++m) {
        term = (term * s).truncated(order) * make_rational(1, m);
        if (term.is_zero()) break;
        out += term;
    }
    return out;
}

}  // namespace detail

// q = exp(Σ_k B_2k / (4k (2k)!) tr (ad y)^{2k}), truncated at `order`.
inline JetSeries q_jet(const LieAlgebra& L, int order) {
    Polynomial s(L.dim(), Coord::y);
    for (int k = 1; 2 * k <= order; ++k)
        s += trace_power_poly(L, k) * (bernoulli(2 * k) / Rational(4 * k * factorial(2 * k)));
    return {order, detail::truncated_exp(s, order)};
}

struct WheelCoefficient {
    Rational value;
    std::optional<WeightEstimate> mc;  // estimate of w_{Wh_2k}
    bool mc_agrees = true;

    double mc_value() const { return mc ? mc->mean / std::ldexp(1.0, 2 * k) : 0; }
    double mc_error() const { return mc ? mc->std_error / std::ldexp(1.0, 2 * k) : 0; }
    int k = 0;
};

using WheelCoefficients = std::map<int, WheelCoefficient>;

// τ = exp(Σ_k c_2k tr (ad y)^{2k}), truncated at `order`.
inline JetSeries tau_jet(const LieAlgebra& L, int order, const WheelCoefficients& wc) {
    Polynomial s(L.dim(), Coord::y);
    for (int k = 1; 2 * k <= order; ++k) {
        Polynomial t = trace_power_poly(L, k);
        if (t.is_zero()) continue;
        auto it = wc.find(k);
        if (it == wc.end()) throw std::invalid_argument("missing wheel coefficient c_" + std::to_string(2 * k));
        s += t * it->second.value;
    }
    return {order, detail::truncated_exp(s, order)};
}

// η(p) = sym(p q).
inline UEnvElement eta(const Polynomial& p, const LieAlgebra& L) {
    const int deg = std::max(0, p.degree());
    return symmetrize(L, multiply_jet(p, q_jet(L, deg)));
}

inline UEnvElement duflo_residual(const Polynomial& p1, const Polynomial& p2, const LieAlgebra& L) {
    for (const auto* p : {&p1, &p2})
        if (!is_invariant(L, *p))
            log::warn("duflo_residual: " + format(*p, L.basis()) +
                      " is not invariant; the identity is not asserted for it");
    EnvelopingAlgebra U(L);
    const int deg = std::max(0, p1.degree() + p2.degree());
    JetSeries q = q_jet(L, deg);
    auto eta_of = [&](const Polynomial& p) { return U.symmetrize(detail::apply_jet(p, q.poly)); };
    return eta_of(p1 * p2) - U.mul(eta_of(p1), eta_of(p2));
}

// Solves c_2k from κ(τ(∂)p) = sym(q(∂)p) on homogeneous degree-2k elements p:
// with τ(∂)p = known + c_2k (T_2k(∂)p) and T_2k(∂)p a constant, the unit
// component fixes c_2k and every other component must already agree.
inline WheelCoefficients solve_wheel_coeffs(const StarContext& ctx, int kmax,
                                            const std::optional<McOptions>& mc = std::nullopt) {
    const LieAlgebra& L = ctx.algebra();
    const std::size_t d = L.dim();
    EnvelopingAlgebra U(L);
    WheelCoefficients wc;
    for (int k = 1; k <= kmax; ++k) {
        const int deg = 2 * k;
        if (deg > ctx.max_n())
            throw CoverageError(ctx.max_n() + 1, "c_" + std::to_string(deg) + " needs graph orders n <= " +
                                                     std::to_string(deg));
        const Polynomial t = trace_power_poly(L, k);
        if (t.is_zero())
            throw NoConstraint("tr (ad y)^" + std::to_string(deg) + " vanishes on " + L.name() +
                               "; no constraint on c_" + std::to_string(deg));
        WheelCoefficients known = wc;
        known[k].value = 0;
        const JetSeries tau0 = tau_jet(L, deg, known);
        const JetSeries q = q_jet(L, deg);

        std::vector<Polynomial> tests;
        for (const auto& inv : find_invariants(L, deg).elements)
            if (inv.low_degree() == deg) tests.push_back(inv);
        for (const auto& e : monomials_of_degree(d, deg)) tests.push_back(Polynomial::monomial(e));

        std::optional<Rational> c;
        std::vector<std::pair<Polynomial, UEnvElement>> residuals;
        for (const auto& p : tests) {
            Rational tp = detail::apply_jet(p, t).coefficient(Exponents(d, 0));
            UEnvElement r = U.symmetrize(detail::apply_jet(p, q.poly)) - kappa(detail::apply_jet(p, tau0.poly), ctx);
            if (!c && tp != 0) c = r.coefficient(Exponents(d, 0)) / tp;
            residuals.emplace_back(p, r);
        }
        if (!c) throw NoConstraint("no degree-" + std::to_string(deg) + " test element pairs nontrivially");
        for (const auto& [p, r] : residuals) {
            Rational tp = detail::apply_jet(p, t).coefficient(Exponents(d, 0));
            UEnvElement left = r;
            left.add_term(Exponents(d, 0), -*c * tp);
            if (!left.is_zero())
                throw InconsistentConstraints("c_" + std::to_string(deg) + " = " + c->get_str() +
                                              " leaves residual " + format(left, L.basis()) + " at p = " +
                                              format(p, L.basis()));
        }
        WheelCoefficient entry;
        entry.k = k;
        entry.value = *c;
        if (mc) {
            entry.mc = mc_weight(wheel(deg), *mc);
            entry.mc_agrees = std::fabs(c->get_d() - entry.mc_value()) <= 3 * entry.mc_error();
        }
        wc[k] = entry;
    }
    return wc;
}

// Graded components of τ(∂)(r p) - (τ(∂)r) ⋆ (τ(∂)p) in degrees
// ≥ deg r + deg p - depth, top degree first.
struct GradedComponent {
    int degree;
    Polynomial value;
};

inline std::vector<GradedComponent> kv_graded_residual(const Polynomial& r, const Polynomial& p, const StarContext& ctx,
                                                       int depth, const WheelCoefficients& wc) {
    if (depth > ctx.max_n())
        throw CoverageError(ctx.max_n() + 1, "depth " + std::to_string(depth) + " needs graph orders n <= " +
                                                 std::to_string(depth));
    const JetSeries tau = tau_jet(ctx.algebra(), depth, wc);
    auto with_tau = [&](const Polynomial& f) { return detail::apply_jet(f, tau.poly); };
    Polynomial lhs = with_tau(r * p);
    GradedResult rhs = star_truncated(with_tau(r), with_tau(p), ctx, depth);
    Polynomial diff = lhs - rhs.value;
    const int top = r.degree() + p.degree();
    std::vector<GradedComponent> out;
    for (int j = top; j >= std::max(0, top - depth); --j) out.push_back({j, diff.homogeneous_component(j)});
    return out;
}

inline bool annihilates_invariants(const DiffOperator& D, const LieAlgebra& L, int d) {
    for (const auto& p : find_invariants(L, d).elements)
        if (!apply_right_operator(p, D).is_zero()) return false;
    return true;
}

}  // namespace kquant
