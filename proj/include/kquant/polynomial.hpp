#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "kquant/rational.hpp"

namespace kquant {

using Exponents = std::vector<int>;

// x: coordinates on g* (elements of S(g), distributions at 0 in g).
// y: coordinates on g (functions, jets, operator coefficients).
enum class Coord { x, y };

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

inline Exponents unit_exponents(std::size_t dim, std::size_t i) {
    Exponents e(dim, 0);
    e[i] = 1;
    return e;
}

// All exponent vectors of length dim and total degree k, in lexicographic order.
inline std::vector<Exponents> monomials_of_degree(std::size_t dim, int k) {
    std::vector<Exponents> out;
    Exponents cur(dim, 0);
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
        if (pos + 1 == dim) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int a = left; a >= 0; --a) {
            cur[pos] = a;
            self(self, pos + 1, left - a);
        }
        cur[pos] = 0;
    };
    if (dim == 0) {
        if (k == 0) out.push_back(cur);
        return out;
    }
    rec(rec, 0, k);
    std::sort(out.begin(), out.end());
    return out;
}

class Polynomial {
public:
    using Terms = std::map<Exponents, Rational>;

    Polynomial() = default;
    explicit Polynomial(std::size_t dim, Coord coord = Coord::x) : dim_(dim), coord_(coord) {}

    static Polynomial constant(std::size_t dim, const Rational& c, Coord coord = Coord::x) {
        Polynomial p(dim, coord);
        p.add_term(Exponents(dim, 0), c);
        return p;
    }
    static Polynomial variable(std::size_t dim, std::size_t i, Coord coord = Coord::x) {
        Polynomial p(dim, coord);
        p.add_term(unit_exponents(dim, i), 1);
        return p;
    }
    static Polynomial monomial(const Exponents& e, const Rational& c = 1, Coord coord = Coord::x) {
        Polynomial p(e.size(), coord);
        p.add_term(e, c);
        return p;
    }

    std::size_t dim() const { return dim_; }
    Coord coord() const { return coord_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }
    int low_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int t = total_degree(e);
            if (d < 0 || t < d) d = t;
        }
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

    Polynomial homogeneous_component(int k) const {
        Polynomial out(dim_, coord_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) == k) out.terms_.emplace(e, c);
        return out;
    }
    Polynomial components_from(int k) const {
        Polynomial out(dim_, coord_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) >= k) out.terms_.emplace(e, c);
        return out;
    }
    Polynomial truncated(int max_degree) const {
        Polynomial out(dim_, coord_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) <= max_degree) out.terms_.emplace(e, c);
        return out;
    }

    Polynomial with_coord(Coord c) const {
        Polynomial out = *this;
        out.coord_ = c;
        return out;
    }

    Polynomial derivative(std::size_t i) const {
        Polynomial out(dim_, coord_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents f = e;
            --f[i];
            out.terms_.emplace(std::move(f), c * e[i]);
        }
        return out;
    }

    // ∂^a with a multi-index; falling factorials computed per term.
    Polynomial derivative(const Exponents& a) const {
        Polynomial out(dim_, coord_);
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            Integer k = 1;
            bool zero = false;
            for (std::size_t i = 0; i < dim_ && !zero; ++i) {
                if (e[i] < a[i]) zero = true;
                for (int j = 0; j < a[i] && !zero; ++j) k *= e[i] - j;
                f[i] = e[i] - a[i];
            }
            if (!zero) out.terms_.emplace(std::move(f), c * k);
        }
        return out;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= -1; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial out(a.dim_, a.coord_);
        Exponents e(a.dim_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < a.dim_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.coord_ == b.coord_ && a.terms_ == b.terms_;
    }

private:
    void check(const Polynomial& o) const {
        if (o.dim_ != dim_) throw CoordinateMismatch("polynomial dimensions differ");
        if (o.coord_ != coord_) throw CoordinateMismatch("polynomials use different coordinate families");
    }

    std::size_t dim_ = 0;
    Coord coord_ = Coord::x;
    Terms terms_;
};

inline Polynomial pow(const Polynomial& p, int k) {
    Polynomial out = Polynomial::constant(p.dim(), 1, p.coord());
    for (int i = 0; i < k; ++i) out = out * p;
    return out;
}

// Basis-name rendering, highest degree first: "4*e*f + h^2 - 1/2*h".
inline std::string format_terms(const std::map<Exponents, Rational>& terms,
                                const std::vector<std::string>& names) {
    if (terms.empty()) return "0";
    std::vector<std::pair<Exponents, Rational>> order(terms.begin(), terms.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        int da = total_degree(a.first), db = total_degree(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : order) {
        Rational mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        std::string vars;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
            if (e[i] > 1) vars += "^" + std::to_string(e[i]);
        }
        if (vars.empty())
            os << mag.get_str();
        else if (mag == 1)
            os << vars;
        else
            os << mag.get_str() << "*" << vars;
    }
    return os.str();
}

inline std::string format(const Polynomial& p, const std::vector<std::string>& names = {}) {
    return format_terms(p.terms(), names);
}

// (p(∂_y) f)(0); so <x^a, y^b> = a! [a = b].
inline Rational pairing(const Polynomial& p, const Polynomial& f) {
    if (p.coord() != Coord::x || f.coord() != Coord::y)
        throw CoordinateMismatch("pairing expects a distribution in x and a function in y");
    if (p.dim() != f.dim()) throw CoordinateMismatch("pairing dimensions differ");
    Rational s = 0;
    const auto& small = p.terms().size() <= f.terms().size() ? p.terms() : f.terms();
    const auto& large = p.terms().size() <= f.terms().size() ? f.terms() : p.terms();
    for (const auto& [e, c] : small) {
        auto it = large.find(e);
        if (it != large.end()) s += c * it->second * multi_factorial(e);
    }
    return s;
}

// Finite sum Σ_β c_β(y) ∂_y^β.
class DiffOperator {
public:
    using Terms = std::map<Exponents, Polynomial>;

    DiffOperator() = default;
    explicit DiffOperator(std::size_t dim) : dim_(dim) {}

    static DiffOperator identity(std::size_t dim) {
        DiffOperator d(dim);
        d.add_term(Exponents(dim, 0), Polynomial::constant(dim, 1, Coord::y));
        return d;
    }
    static DiffOperator multiplication(const Polynomial& f) {
        DiffOperator d(f.dim());
        d.add_term(Exponents(f.dim(), 0), f);
        return d;
    }
    static DiffOperator partial(std::size_t dim, std::size_t i) {
        DiffOperator d(dim);
        d.add_term(unit_exponents(dim, i), Polynomial::constant(dim, 1, Coord::y));
        return d;
    }

    std::size_t dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int order() const {
        int o = -1;
        for (const auto& [b, c] : terms_) o = std::max(o, total_degree(b));
        return o;
    }
    int coefficient_degree() const {
        int d = -1;
        for (const auto& [b, c] : terms_) d = std::max(d, c.degree());
        return d;
    }

    void add_term(const Exponents& beta, const Polynomial& coeff) {
        if (coeff.coord() != Coord::y) throw CoordinateMismatch("operator coefficients live in y");
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(beta, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    DiffOperator& operator+=(const DiffOperator& o) {
        for (const auto& [b, c] : o.terms_) add_term(b, c);
        return *this;
    }
    friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
    friend DiffOperator operator*(const Rational& s, const DiffOperator& d) {
        DiffOperator out(d.dim_);
        for (const auto& [b, c] : d.terms_) out.add_term(b, c * s);
        return out;
    }
    friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    std::size_t dim_ = 0;
    Terms terms_;
};

// D f: the ordinary left action on functions of y.
inline Polynomial apply(const DiffOperator& d, const Polynomial& f) {
    if (f.coord() != Coord::y) throw CoordinateMismatch("operators act on functions of y");
    Polynomial out(f.dim(), Coord::y);
    for (const auto& [beta, coeff] : d.terms()) out += coeff * f.derivative(beta);
    return out;
}

// Composition a∘b on functions, via the Leibniz rule.
inline DiffOperator compose(const DiffOperator& a, const DiffOperator& b) {
    DiffOperator out(a.dim());
    const std::size_t d = a.dim();
    for (const auto& [beta, ca] : a.terms())
        for (const auto& [gamma, cb] : b.terms()) {
            // ∂^β (cb ∂^γ) = Σ_{δ≤β} C(β,δ) (∂^δ cb) ∂^{β-δ+γ}
            Exponents delta(d, 0);
            auto rec = [&](auto&& self, std::size_t i) -> void {
                if (i == d) {
                    Rational binom = 1;
                    Exponents rest(d);
                    for (std::size_t j = 0; j < d; ++j) {
                        binom *= binomial(beta[j], delta[j]);
                        rest[j] = beta[j] - delta[j] + gamma[j];
                    }
                    Polynomial coeff = ca * cb.derivative(delta);
                    out.add_term(rest, coeff * binom);
                    return;
                }
                for (int k = 0; k <= beta[i]; ++k) {
                    delta[i] = k;
                    self(self, i + 1);
                }
                delta[i] = 0;
            };
            rec(rec, 0);
        }
    return out;
}

// Right action on distributions: p·(y^α ∂_y^β) = x^β ∂_x^α p, so that
// <p·D, f> = <p, D f>.
inline Polynomial apply_right_operator(const Polynomial& p, const DiffOperator& d) {
    if (p.coord() != Coord::x) throw CoordinateMismatch("right action is on distributions in x");
    Polynomial out(p.dim(), Coord::x);
    for (const auto& [beta, coeff] : d.terms()) {
        Polynomial shift = Polynomial::monomial(beta, 1, Coord::x);
        for (const auto& [alpha, c] : coeff.terms()) out += shift * p.derivative(alpha) * c;
    }
    return out;
}

inline std::string format(const DiffOperator& d, const std::vector<std::string>& names = {}) {
    if (d.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [beta, coeff] : d.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << format(coeff, names) << ")";
        for (std::size_t i = 0; i < beta.size(); ++i) {
            if (beta[i] == 0) continue;
            os << "*d_" << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
            if (beta[i] > 1) os << "^" << beta[i];
        }
    }
    return os.str();
}

}  // namespace kquant
