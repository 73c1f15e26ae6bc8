#pragma once

#include <map>
#include <string>
#include <vector>

#include "kquant/graphs.hpp"
#include "kquant/lie_algebra.hpp"
#include "kquant/polynomial.hpp"
#include "kquant/weights.hpp"

namespace kquant {

// Graph-to-operator compiler for the linear Poisson structure
// γ^{ij} = ½ Σ_k c_ij^k x_k. Label sums run only over pairs (i,j) with γ^{ij} ≠ 0.
class GraphCompiler {
public:
    explicit GraphCompiler(const LieAlgebra& L) : L_(L), dim_(L.dim()) {
        const int d = static_cast<int>(dim_);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                auto br = L.bracket(i, j);
                if (br.empty()) continue;
                Polynomial g(dim_);
                for (const auto& [k, v] : br) g.add_term(unit_exponents(dim_, k), v / 2);
                pairs_.push_back({i, j, std::move(g)});
            }
    }

    const LieAlgebra& algebra() const { return L_; }
    std::size_t dim() const { return dim_; }

    // Calls visit(coefficient polynomial, α, β) for every nonzero labeled term
    // coefficient · ∂^α f1 · ∂^β f2 of B_Γ. Vertices with two or more incoming
    // edges kill the term since γ is linear.
    template <typename Visit>
    void for_each_term(const AdmissibleGraph& g, Visit&& visit) const {
        if (g.n == 0) {
            visit(Polynomial::constant(dim_, 1), Exponents(dim_, 0), Exponents(dim_, 0));
            return;
        }
        for (int d : g.in_degrees())
            if (d > 1) return;
        for (const auto& e : g.out)
            if (e.size() != 2) throw GraphError("bidifferential operators need out-degree 2 at every vertex");
        // incoming[v] = (source vertex, slot) of the edge ending at v, if any.
        std::vector<std::pair<int, int>> incoming(g.n, {-1, -1});
        for (int v = 0; v < g.n; ++v)
            for (int s = 0; s < 2; ++s)
                if (g.out[v][s].kind == Target::vertex) incoming[g.out[v][s].index] = {v, s};
        std::vector<int> choice(g.n, 0);
        auto label = [&](int v, int slot) {
            const auto& p = pairs_[choice[v]];
            return slot == 0 ? p.i : p.j;
        };
        auto leaf = [&] {
            Polynomial coeff = Polynomial::constant(dim_, 1);
            Rational scalar = 1;
            for (int v = 0; v < g.n; ++v) {
                const auto& p = pairs_[choice[v]];
                if (incoming[v].first < 0) {
                    coeff = coeff * p.gamma;
                } else {
                    int l = label(incoming[v].first, incoming[v].second);
                    Rational c = L_.c(p.i, p.j, l);
                    if (c == 0) return;
                    scalar *= c / 2;
                }
            }
            Exponents alpha(dim_, 0), beta(dim_, 0);
            for (int v = 0; v < g.n; ++v)
                for (int s = 0; s < 2; ++s) {
                    const Target& t = g.out[v][s];
                    if (t.kind != Target::ground) continue;
                    ++(t.index == 0 ? alpha : beta)[label(v, s)];
                }
            visit(coeff * scalar, alpha, beta);
        };
        auto rec = [&](auto&& self, int v) -> void {
            if (v == g.n) {
                leaf();
                return;
            }
            for (std::size_t c = 0; c < pairs_.size(); ++c) {
                choice[v] = static_cast<int>(c);
                self(self, v + 1);
            }
        };
        if (pairs_.empty()) return;
        rec(rec, 0);
    }

    Polynomial apply(const AdmissibleGraph& g, const Polynomial& f1, const Polynomial& f2) const {
        Polynomial out(dim_);
        std::map<Exponents, Polynomial> d1, d2;
        auto deriv = [](std::map<Exponents, Polynomial>& memo, const Polynomial& f,
                        const Exponents& a) -> const Polynomial& {
            auto it = memo.find(a);
            if (it == memo.end()) it = memo.emplace(a, f.derivative(a)).first;
            return it->second;
        };
        for_each_term(g, [&](const Polynomial& coeff, const Exponents& alpha, const Exponents& beta) {
            if (total_degree(alpha) > f1.degree() || total_degree(beta) > f2.degree()) return;
            const Polynomial& a = deriv(d1, f1, alpha);
            if (a.is_zero()) return;
            const Polynomial& b = deriv(d2, f2, beta);
            if (b.is_zero()) return;
            out += coeff * a * b;
        });
        return out;
    }

private:
    struct Pair {
        int i, j;
        Polynomial gamma;
    };
    LieAlgebra L_;
    std::size_t dim_;
    std::vector<Pair> pairs_;
};

inline Polynomial b_gamma(const AdmissibleGraph& g, const LieAlgebra& L, const Polynomial& f1, const Polynomial& f2) {
    return GraphCompiler(L).apply(g, f1, f2);
}

// Normalized algebra, weight table and graph-order ceiling, with ħ = 1.
class StarContext {
public:
    struct WeightedGraph {
        AdmissibleGraph graph;
        std::string encoding;
        Rational weight;       // w_Γ
        Rational coefficient;  // w_Γ / n!
    };

    StarContext(const LieAlgebra& L, const WeightTable& table, int max_n = 2)
        : source_(L), table_(table), max_n_(max_n) {
        auto norm = normalize_constants(L);
        algebra_ = norm.algebra;
        scale_ = norm.scale;
        compiler_ = std::make_shared<GraphCompiler>(algebra_);
        for (int n = 0; n <= max_n; ++n) {
            std::vector<WeightedGraph> graphs;
            for (const auto& g : enumerate_graphs(n, GraphClass::linear)) {
                std::string enc = encode(g);
                auto w = table.lookup(enc);
                if (!w)
                    throw CoverageError(n, "weight table lacks " + enc + " (order " + std::to_string(n) + ")");
                if (*w != 0) graphs.push_back({g, enc, *w, *w / Rational(factorial(n))});
            }
            orders_.push_back(std::move(graphs));
        }
    }

    const LieAlgebra& algebra() const { return algebra_; }
    const LieAlgebra& source_algebra() const { return source_; }
    const Rational& scale() const { return scale_; }
    const WeightTable& table() const { return table_; }
    int max_n() const { return max_n_; }
    const GraphCompiler& compiler() const { return *compiler_; }
    const std::vector<WeightedGraph>& order(int n) const { return orders_.at(n); }

private:
    LieAlgebra source_, algebra_;
    Rational scale_;
    WeightTable table_;
    int max_n_;
    std::shared_ptr<GraphCompiler> compiler_;
    std::vector<std::vector<WeightedGraph>> orders_;
};

inline Polynomial b_gamma(const AdmissibleGraph& g, const StarContext& ctx, const Polynomial& f1, const Polynomial& f2) {
    return ctx.compiler().apply(g, f1, f2);
}

// Star product keeping graph orders n ≤ limit. Components of degree
// ≥ exact_from do not depend on the dropped orders.
struct GradedResult {
    Polynomial value;
    int exact_from = 0;

    Polynomial exact_part() const { return value.components_from(exact_from); }
};

inline GradedResult star_truncated(const Polynomial& f1, const Polynomial& f2, const StarContext& ctx, int limit = -1) {
    if (limit < 0) limit = ctx.max_n();
    if (limit > ctx.max_n())
        throw CoverageError(ctx.max_n() + 1, "weight table covers graph orders n <= " + std::to_string(ctx.max_n()));
    const int l1 = f1.degree(), l2 = f2.degree();
    GradedResult r{Polynomial(ctx.algebra().dim()), 0};
    if (l1 < 0 || l2 < 0) return r;
    r.exact_from = std::max(0, l1 + l2 - limit);
    const int top = std::min(limit, l1 + l2);
    for (int n = 0; n <= top; ++n)
        for (const auto& wg : ctx.order(n)) r.value += ctx.compiler().apply(wg.graph, f1, f2) * wg.coefficient;
    return r;
}

inline Polynomial star(const Polynomial& f1, const Polynomial& f2, const StarContext& ctx) {
    const int need = f1.degree() + f2.degree();
    if (need > ctx.max_n())
        throw CoverageError(ctx.max_n() + 1, "exact product needs graph orders up to n = " + std::to_string(need) +
                                                 ", weight table covers n <= " + std::to_string(ctx.max_n()));
    return star_truncated(f1, f2, ctx).value;
}

// ∂_p^⋆ truncated to coefficient degree ≤ cap, with all graph orders n ≤ max_n.
// The coefficient of y^α ∂^β comes from order n = deg p + |α| - |β| and is
// complete when that order is covered.
struct RightOperator {
    DiffOperator op;
    int max_n = 0;
    int cap = 0;
    int p_degree = 0;

    bool covered(int alpha_degree, int beta_degree) const { return p_degree + alpha_degree - beta_degree <= max_n; }
};

namespace detail {

// Σ_α M_α ∂^α r for B_Γ(r, p), converted to Σ m_{αβ} y^α ∂^β.
inline void add_graph_operator(DiffOperator& op, const GraphCompiler& comp, const AdmissibleGraph& g,
                               const Polynomial& p, const Rational& factor, int cap) {
    comp.for_each_term(g, [&](const Polynomial& coeff, const Exponents& alpha, const Exponents& beta) {
        if (total_degree(alpha) > cap) return;
        Polynomial m = coeff * p.derivative(beta) * factor;
        for (const auto& [b, c] : m.terms()) op.add_term(b, Polynomial::monomial(alpha, c, Coord::y));
    });
}

}  // namespace detail

inline RightOperator extract_right_operator(const Polynomial& p, const StarContext& ctx, int cap,
                                            bool allow_truncation = false) {
    const int l = p.degree();
    if (!allow_truncation && l + cap > ctx.max_n())
        throw CoverageError(ctx.max_n() + 1, "operator up to coefficient degree " + std::to_string(cap) +
                                                 " needs graph orders n <= " + std::to_string(l + cap));
    RightOperator r{DiffOperator(ctx.algebra().dim()), ctx.max_n(), cap, l};
    if (l < 0) return r;
    for (int n = 0; n <= ctx.max_n(); ++n)
        for (const auto& wg : ctx.order(n))
            detail::add_graph_operator(r.op, ctx.compiler(), wg.graph, p, wg.coefficient, cap);
    return r;
}

struct BoundEntry {
    int n;
    Exponents alpha, beta;
    Rational value;  // exact |c_αβ|, or the rigorous upper bound when !exact
    bool exact;
    Rational limit;  // C'_p (32e)^{|α|}
};

struct BoundReport {
    Exponents a;
    int n_max = 0;
    std::vector<BoundEntry> entries;
    double max_ratio = 0;
    bool pass = true;
};

// |c_αβ| ≤ C'_p (32e)^{|α|}, C'_p = (32e)^l a!. Orders covered by the table
// use exact coefficients; higher orders bound each graph's weight by 4^n.
// e is replaced by a rational lower bound, which only makes the check stricter.
inline BoundReport coefficient_bound_report(const Polynomial& p, const StarContext& ctx, int n_max = 3) {
    if (p.terms().size() != 1) throw std::invalid_argument("coefficient_bound_report expects a monomial");
    const Exponents a = p.terms().begin()->first;
    const int l = total_degree(a);
    const Polynomial mono = Polynomial::monomial(a);
    const Rational r32e = 32 * e_lower_bound();
    const Rational cprime = pow(r32e, l) * Rational(multi_factorial(a));
    BoundReport rep{a, n_max, {}, 0, true};
    const auto& comp = ctx.compiler();
    for (int n = 0; n <= n_max; ++n) {
        const bool exact = n <= ctx.max_n();
        std::map<std::pair<Exponents, Exponents>, Rational> acc;
        auto add = [&](const AdmissibleGraph& g, const Rational& factor, bool absolute) {
            int into_r = 0;
            for (const auto& e : g.out)
                for (const auto& t : e) into_r += t.kind == Target::ground && t.index == 1;
            if (into_r > l) return;
            DiffOperator op(comp.dim());
            detail::add_graph_operator(op, comp, g, mono, 1, 2 * n);
            for (const auto& [beta, coeff] : op.terms())
                for (const auto& [alpha, c] : coeff.terms())
                    acc[{alpha, beta}] += (absolute ? abs(c) : c) * factor;
        };
        if (exact) {
            for (const auto& wg : ctx.order(n)) add(wg.graph, wg.coefficient, false);
        } else {
            Rational f = pow(Rational(4), n) / Rational(factorial(n));
            for (const auto& g : enumerate_graphs(n, GraphClass::linear)) add(g, f, true);
        }
        for (const auto& [ab, v] : acc) {
            if (v == 0) continue;
            BoundEntry e{n, ab.first, ab.second, abs(v), exact, cprime * pow(r32e, total_degree(ab.first))};
            double ratio = Rational(e.value / e.limit).get_d();
            rep.max_ratio = std::max(rep.max_ratio, ratio);
            if (e.value > e.limit) rep.pass = false;
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

}  // namespace kquant
