#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kquant/lie_algebra.hpp"
#include "kquant/polynomial.hpp"

namespace kquant {

// Element of U(g) in PBW normal order: monomial x_1^{a_1}...x_d^{a_d} in the
// basis order of the algebra file.
class UEnvElement {
public:
    using Terms = std::map<Exponents, Rational>;

    UEnvElement() = default;
    explicit UEnvElement(std::size_t dim) : dim_(dim) {}

    static UEnvElement unit(std::size_t dim) {
        UEnvElement u(dim);
        u.add_term(Exponents(dim, 0), 1);
        return u;
    }
    static UEnvElement generator(std::size_t dim, std::size_t i) {
        UEnvElement u(dim);
        u.add_term(unit_exponents(dim, i), 1);
        return u;
    }
    static UEnvElement monomial(const Exponents& e, const Rational& c = 1) {
        UEnvElement u(e.size());
        u.add_term(e, c);
        return u;
    }

    std::size_t dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }
    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Commutative polynomial with the same coefficients (the top symbol when
    // restricted to the top degree).
    Polynomial symbol() const {
        Polynomial p(dim_);
        for (const auto& [e, c] : terms_) p.add_term(e, c);
        return p;
    }

    UEnvElement& operator+=(const UEnvElement& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    UEnvElement& operator-=(const UEnvElement& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    UEnvElement& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend UEnvElement operator+(UEnvElement a, const UEnvElement& b) { return a += b; }
    friend UEnvElement operator-(UEnvElement a, const UEnvElement& b) { return a -= b; }
    friend UEnvElement operator*(const Rational& s, UEnvElement a) { return a *= s; }
    friend bool operator==(const UEnvElement& a, const UEnvElement& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    std::size_t dim_ = 0;
    Terms terms_;
};

inline std::string format(const UEnvElement& u, const std::vector<std::string>& names = {}) {
    return format_terms(u.terms(), names);
}

// PBW arithmetic for one algebra. Memo tables make repeated products cheap;
// an instance is not meant to be shared between threads.
class EnvelopingAlgebra {
public:
    explicit EnvelopingAlgebra(const LieAlgebra& L) : L_(std::make_shared<const LieAlgebra>(L)) {}

    const LieAlgebra& algebra() const { return *L_; }
    std::size_t dim() const { return L_->dim(); }

    UEnvElement mul(const UEnvElement& u, const UEnvElement& v) const {
        UEnvElement out(dim());
        for (const auto& [ev, cv] : v.terms()) {
            UEnvElement cur = u;
            for (std::size_t g = 0; g < dim(); ++g)
                for (int r = 0; r < ev[g]; ++r) cur = mul_generator(cur, static_cast<int>(g));
            out += cv * cur;
        }
        return out;
    }

    // Average over all orderings of each monomial, via
    // sym(x^a) = Σ_i (a_i/|a|) sym(x^{a-e_i}) x_i.
    UEnvElement symmetrize(const Polynomial& p) const {
        UEnvElement out(dim());
        for (const auto& [e, c] : p.terms()) out += c * sym_monomial(e);
        return out;
    }

    // Inverse of symmetrize, peeling off the top degree each round.
    Polynomial unsymmetrize(const UEnvElement& u) const {
        Polynomial out(dim());
        UEnvElement rest = u;
        while (!rest.is_zero()) {
            int top = rest.degree();
            Polynomial lead(dim());
            for (const auto& [e, c] : rest.terms())
                if (total_degree(e) == top) lead.add_term(e, c);
            out += lead;
            rest -= symmetrize(lead);
        }
        return out;
    }

private:
    UEnvElement mul_generator(const UEnvElement& u, int g) const {
        UEnvElement out(dim());
        for (const auto& [e, c] : u.terms()) out += c * mono_times_gen(e, g);
        return out;
    }

    // x^m · x_g in normal order. With last the largest index present in m and
    // m = m'·x_last: m'·x_last·x_g = (m'·x_g)·x_last + m'·[x_last, x_g].
    const UEnvElement& mono_times_gen(const Exponents& m, int g) const {
        auto key = std::make_pair(m, g);
        if (auto it = gen_memo_.find(key); it != gen_memo_.end()) return it->second;
        int last = -1;
        for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i)
            if (m[i] > 0) {
                last = i;
                break;
            }
        UEnvElement out(dim());
        if (last <= g) {
            Exponents e = m;
            ++e[g];
            out.add_term(e, 1);
        } else {
            Exponents rest = m;
            --rest[last];
            UEnvElement head = mono_times_gen(rest, g);
            out += mul_generator(head, last);
            for (const auto& [k, v] : L_->bracket(last, g)) out += v * mono_times_gen(rest, k);
        }
        return gen_memo_.emplace(key, std::move(out)).first->second;
    }

    const UEnvElement& sym_monomial(const Exponents& a) const {
        if (auto it = sym_memo_.find(a); it != sym_memo_.end()) return it->second;
        int k = total_degree(a);
        UEnvElement out(dim());
        if (k == 0) {
            out = UEnvElement::unit(dim());
        } else {
            for (std::size_t i = 0; i < dim(); ++i) {
                if (a[i] == 0) continue;
                Exponents b = a;
                --b[i];
                out += make_rational(a[i], k) * mul_generator(sym_monomial(b), static_cast<int>(i));
            }
        }
        return sym_memo_.emplace(a, std::move(out)).first->second;
    }

    std::shared_ptr<const LieAlgebra> L_;
    mutable std::map<std::pair<Exponents, int>, UEnvElement> gen_memo_;
    mutable std::map<Exponents, UEnvElement> sym_memo_;
};

inline UEnvElement uea_mul(const LieAlgebra& L, const UEnvElement& u, const UEnvElement& v) {
    return EnvelopingAlgebra(L).mul(u, v);
}
inline UEnvElement symmetrize(const LieAlgebra& L, const Polynomial& p) {
    return EnvelopingAlgebra(L).symmetrize(p);
}
inline Polynomial unsymmetrize(const LieAlgebra& L, const UEnvElement& u) {
    return EnvelopingAlgebra(L).unsymmetrize(u);
}

}  // namespace kquant
