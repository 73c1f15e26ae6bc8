#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "kquant/fixtures.hpp"
#include "kquant/graphs.hpp"
#include "kquant/lie_algebra.hpp"
#include "kquant/star.hpp"
#include "kquant/weights.hpp"

namespace kquant {

// Rationals p/q with q ≤ max_den inside [lo, hi], simplest first.
inline std::vector<Rational> rationals_in(double lo, double hi, int max_den) {
    std::vector<std::pair<std::pair<long, long>, Rational>> found;
    for (long q = 1; q <= max_den; ++q)
        for (long p = static_cast<long>(std::ceil(lo * q)); p <= static_cast<long>(std::floor(hi * q)); ++p)
            if (std::gcd(p, q) == 1) found.push_back({{q, std::labs(p)}, make_rational(p, q)});
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Rational> out;
    for (auto& f : found) out.push_back(f.second);
    return out;
}

struct TableSolveOptions {
    McOptions mc{1'000'000, 20240601, 0};
    double tolerance = 4;
    int max_denominator = 96;
    int max_candidates = 6;
    int max_checks = 4096;
    WeightCache* cache = nullptr;
};

// Graphs related by relabeling vertices (weight unchanged) and swapping the
// two edges of a vertex (weight changes sign).
struct Orbit {
    std::vector<std::string> members;
    std::vector<int> signs;  // w(member) = sign · w(orbit)
    double mean = 0, std_error = 0;
    std::vector<Rational> candidates;
    Rational value;
};

struct TableSolveResult {
    WeightTable table;
    std::vector<Orbit> orbits;
    std::map<std::string, WeightEstimate> estimates;
    std::vector<std::string> checks;  // constraint names that passed
};

namespace detail {

inline std::vector<std::pair<std::string, int>> orbit_of(const AdmissibleGraph& g) {
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<std::string, int> seen;
    do {
        AdmissibleGraph h = relabel(g, perm);
        for (int mask = 0; mask < (1 << g.n); ++mask) {
            AdmissibleGraph s = h;
            for (int v = 0; v < g.n; ++v)
                if (mask >> v & 1) std::swap(s.out[v][0], s.out[v][1]);
            seen.emplace(encode(s), __builtin_popcount(mask) % 2 ? -1 : 1);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {seen.begin(), seen.end()};
}

inline const LieAlgebra& solver_algebra(const std::string& which) {
    static const LieAlgebra sl2 = load_algebra(fixtures::algebras().at("sl2"));
    // Non-unimodular solvable algebra with two distinct eigenvalues.
    static const LieAlgebra gen = load_algebra(
        "algebra test3\ndim 3\nbasis x y z\nbracket x y -> 1 y\nbracket x z -> 2 z\n");
    return which == "sl2" ? sl2 : gen;
}

inline std::vector<Polynomial> monomials_up_to(std::size_t dim, int deg) {
    std::vector<Polynomial> out;
    for (int k = 0; k <= deg; ++k)
        for (const auto& e : monomials_of_degree(dim, k)) out.push_back(Polynomial::monomial(e));
    return out;
}

// γ(f1, f2) = Σ γ^{ij} ∂_i f1 ∂_j f2.
inline Polynomial poisson_bracket(const LieAlgebra& L, const Polynomial& f1, const Polynomial& f2) {
    Polynomial out(L.dim());
    for (int i = 0; i < static_cast<int>(L.dim()); ++i)
        for (int j = 0; j < static_cast<int>(L.dim()); ++j)
            for (const auto& [k, v] : L.bracket(i, j))
                out += Polynomial::variable(L.dim(), k) * f1.derivative(i) * f2.derivative(j) * (v / 2);
    return out;
}

}  // namespace detail

// Exact checks a low-order table must pass. Returns the first failure, or an
// empty string.
inline std::string check_low_order_table(const WeightTable& t, std::vector<std::string>* passed = nullptr) {
    auto ok = [&](const std::string& name) {
        if (passed) passed->push_back(name);
    };
    auto w0 = t.lookup("K0:");
    if (!w0 || *w0 != 1) return "empty graph weight must be 1";
    ok("empty graph weight 1");
    for (const auto& [enc, w] : t.weights) {
        int n = parse_graph(enc).n;
        if (abs(w) > pow(Rational(4), n)) return "|w| > 4^n for " + enc;
    }
    ok("|w| <= 4^n");
    for (const char* name : {"sl2", "test3"}) {
        const LieAlgebra& L = detail::solver_algebra(name);
        GraphCompiler comp(L);
        auto monos = detail::monomials_up_to(L.dim(), 2);
        for (const auto& f1 : monos)
            for (const auto& f2 : monos) {
                Polynomial b1(L.dim());
                for (const auto& g : enumerate_graphs(1, GraphClass::linear))
                    b1 += comp.apply(g, f1, f2) * t.lookup(encode(g)).value_or(0);
                if (b1 != detail::poisson_bracket(L, f1, f2))
                    return std::string("first-order term differs from the Poisson bracket on ") + name;
            }
    }
    ok("B1 = gamma");
    for (const char* name : {"sl2", "test3"}) {
        const LieAlgebra& L = detail::solver_algebra(name);
        StarContext ctx(L, t, 2);
        Polynomial one = Polynomial::constant(L.dim(), 1);
        for (const auto& f : detail::monomials_up_to(L.dim(), 2))
            if (star(f, one, ctx) != f || star(one, f, ctx) != f)
                return std::string("unitality fails on ") + name + " at " + format(f, L.basis());
    }
    ok("unitality through n = 2");
    const LieAlgebra& sl2 = detail::solver_algebra("sl2");
    StarContext ctx(sl2, t, 2);
    const std::size_t d = sl2.dim();
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            auto xa = Polynomial::variable(d, a), xb = Polynomial::variable(d, b);
            Polynomial br(d);
            for (const auto& [k, v] : sl2.bracket(a, b)) br += Polynomial::variable(d, k) * v;
            if (star(xa, xb, ctx) - star(xb, xa, ctx) != br) return "commutator identity fails on sl2";
        }
    ok("commutators on sl2");
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) {
                auto xa = Polynomial::variable(d, a), xb = Polynomial::variable(d, b), xc = Polynomial::variable(d, c);
                auto left = star_truncated(star(xa, xb, ctx), xc, ctx);
                auto right = star_truncated(xa, star(xb, xc, ctx), ctx);
                int from = std::max(left.exact_from, right.exact_from);
                if ((left.value - right.value).components_from(from) != Polynomial(d))
                    return "graded associativity fails on sl2";
            }
    ok("graded associativity on sl2");
    return {};
}

// MC estimates for A_1 ∪ A_2, pooled over orbits, turned into the simplest
// rationals compatible with the estimates and with check_low_order_table.
inline TableSolveResult solve_low_order_table(const TableSolveOptions& opt = {}) {
    TableSolveResult res;
    std::map<std::string, bool> assigned;
    for (int n = 1; n <= 2; ++n)
        for (const auto& g : enumerate_graphs(n, GraphClass::linear))
            res.estimates[encode(g)] = cached_mc_weight(g, opt.mc, opt.cache);

    for (int n = 1; n <= 2; ++n)
        for (const auto& g : enumerate_graphs(n, GraphClass::linear)) {
            if (assigned[encode(g)]) continue;
            Orbit o;
            double s = 0, v = 0;
            for (const auto& [enc, sign] : detail::orbit_of(g)) {
                assigned[enc] = true;
                o.members.push_back(enc);
                o.signs.push_back(sign);
                const auto& e = res.estimates.at(enc);
                s += sign * e.mean;
                v += e.std_error * e.std_error;
            }
            const double m = static_cast<double>(o.members.size());
            o.mean = s / m;
            o.std_error = std::sqrt(v) / m;
            const double half = opt.tolerance * o.std_error + 1e-9;
            o.candidates = rationals_in(o.mean - half, o.mean + half, opt.max_denominator);
            // Every member must also agree individually.
            std::erase_if(o.candidates, [&](const Rational& r) {
                for (std::size_t i = 0; i < o.members.size(); ++i) {
                    const auto& e = res.estimates.at(o.members[i]);
                    if (std::fabs(o.signs[i] * r.get_d() - e.mean) > opt.tolerance * e.std_error + 1e-9) return true;
                }
                return false;
            });
            if (o.candidates.empty())
                throw ReconstructionError("no rational with denominator <= " + std::to_string(opt.max_denominator) +
                                          " fits the estimate " + std::to_string(o.mean) + " ± " +
                                          std::to_string(o.std_error) + " for " + o.members.front());
            if (static_cast<int>(o.candidates.size()) > opt.max_candidates) o.candidates.resize(opt.max_candidates);
            res.orbits.push_back(std::move(o));
        }

    auto build = [&](const std::vector<int>& pick) {
        WeightTable t;
        t.max_order = 2;
        t.weights["K0:"] = 1;
        t.provenance["K0:"] = "empty graph";
        std::ostringstream prov;
        prov << "solved mc samples=" << opt.mc.samples << " seed=" << opt.mc.seed << " " << integrator_version;
        for (std::size_t i = 0; i < res.orbits.size(); ++i) {
            const auto& o = res.orbits[i];
            for (std::size_t j = 0; j < o.members.size(); ++j) {
                t.weights[o.members[j]] = o.candidates[pick[i]] * o.signs[j];
                t.provenance[o.members[j]] = prov.str();
            }
        }
        return t;
    };

    // Best-first over candidate indices: all picks with rank sum s before s+1.
    const std::size_t k = res.orbits.size();
    int checks = 0;
    std::string last_failure;
    for (int total = 0; checks < opt.max_checks; ++total) {
        bool any = false;
        std::vector<int> pick(k, 0);
        std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int left) -> bool {
            if (i + 1 == k) {
                if (left >= static_cast<int>(res.orbits[i].candidates.size())) return false;
                pick[i] = left;
                any = true;
                ++checks;
                WeightTable t = build(pick);
                std::vector<std::string> passed;
                std::string fail = check_low_order_table(t, &passed);
                if (fail.empty()) {
                    res.table = t;
                    res.checks = passed;
                    return true;
                }
                last_failure = fail;
                return checks >= opt.max_checks;
            }
            for (int r = 0; r <= left && r < static_cast<int>(res.orbits[i].candidates.size()); ++r) {
                pick[i] = r;
                if (rec(i + 1, left - r)) return true;
            }
            return false;
        };
        if (rec(0, total)) break;
        if (!any) break;
    }
    if (res.table.weights.empty())
        throw InconsistentConstraints("no candidate weight table passes the constraint suite (last failure: " +
                                      last_failure + ")");
    for (std::size_t i = 0; i < res.orbits.size(); ++i) res.orbits[i].value = res.table.weights.at(res.orbits[i].members[0]) * res.orbits[i].signs[0];
    res.checks.push_back("every weight within tolerance of its estimate");
    return res;
}

}  // namespace kquant
