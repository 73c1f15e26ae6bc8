#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kquant/rational.hpp"

namespace kquant {

// Finite-dimensional Lie algebra over Q. Only brackets [x_i, x_j] with i < j are
// stored; the antisymmetric completion is computed on access.
class LieAlgebra {
public:
    using Bracket = std::map<int, Rational>;  // k -> c_ij^k

    LieAlgebra() = default;
    LieAlgebra(std::string name, std::vector<std::string> basis)
        : name_(std::move(name)), basis_(std::move(basis)) {}

    const std::string& name() const { return name_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::string>& basis() const { return basis_; }
    const std::map<std::pair<int, int>, Bracket>& brackets() const { return upper_; }

    int index_of(const std::string& id) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] == id) return static_cast<int>(i);
        return -1;
    }

    Rational c(int i, int j, int k) const {
        if (i == j) return 0;
        bool flip = i > j;
        auto it = upper_.find(flip ? std::pair{j, i} : std::pair{i, j});
        if (it == upper_.end()) return 0;
        auto kt = it->second.find(k);
        if (kt == it->second.end()) return 0;
        return flip ? Rational(-kt->second) : kt->second;
    }

    // [x_i, x_j] as k -> coefficient.
    Bracket bracket(int i, int j) const {
        Bracket out;
        if (i == j) return out;
        auto it = upper_.find(i < j ? std::pair{i, j} : std::pair{j, i});
        if (it == upper_.end()) return out;
        for (const auto& [k, v] : it->second) out.emplace(k, i < j ? v : Rational(-v));
        return out;
    }

    void set_bracket(int i, int j, int k, const Rational& v) {
        if (i > j) {
            set_bracket(j, i, k, -v);
            return;
        }
        auto& b = upper_[{i, j}];
        if (v == 0)
            b.erase(k);
        else
            b[k] = v;
        if (b.empty()) upper_.erase({i, j});
    }

    bool is_abelian() const { return upper_.empty(); }

    Rational max_abs_constant() const {
        Rational m = 0;
        for (const auto& [ij, b] : upper_)
            for (const auto& [k, v] : b)
                if (abs(v) > m) m = abs(v);
        return m;
    }

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        return a.name_ == b.name_ && a.basis_ == b.basis_ && a.upper_ == b.upper_;
    }

private:
    std::string name_;
    std::vector<std::string> basis_;
    std::map<std::pair<int, int>, Bracket> upper_;
};

// Throws AlgebraError naming the first quadruple (i,j,k,l) with a nonzero
// Jacobi sum.
inline void check_jacobi(const LieAlgebra& L) {
    const int d = static_cast<int>(L.dim());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    Rational s = 0;
                    for (int m = 0; m < d; ++m)
                        s += L.c(i, j, m) * L.c(m, k, l) + L.c(j, k, m) * L.c(m, i, l) +
                             L.c(k, i, m) * L.c(m, j, l);
                    if (s != 0) {
                        const auto& b = L.basis();
                        throw AlgebraError("Jacobi identity fails at (" + b[i] + "," + b[j] + "," +
                                           b[k] + "," + b[l] + "): sum " + s.get_str());
                    }
                }
}

inline LieAlgebra load_algebra(const std::string& document) {
    std::istringstream in(document);
    std::string line, name;
    int dim = -1;
    std::vector<std::string> basis;
    bool have_basis = false;
    // (a,b) as written -> k -> value, kept to detect conflicting duplicates.
    std::map<std::pair<int, int>, std::map<int, Rational>> given;
    std::vector<std::pair<int, std::string>> pending;  // bracket lines before basis
    int lineno = 0;

    auto fail = [&](const std::string& msg) {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };

    auto parse_bracket = [&](std::istringstream& ls) {
        std::string a, b, arrow;
        if (!(ls >> a >> b >> arrow) || arrow != "->") fail("expected 'bracket <a> <b> -> <rat> <c> ...'");
        int ia = -1, ib = -1;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (basis[i] == a) ia = static_cast<int>(i);
            if (basis[i] == b) ib = static_cast<int>(i);
        }
        if (ia < 0) fail("unknown basis element '" + a + "'");
        if (ib < 0) fail("unknown basis element '" + b + "'");
        std::map<int, Rational> rhs;
        std::string coef, target;
        bool any = false;
        while (ls >> coef) {
            if (!(ls >> target)) fail("coefficient '" + coef + "' without basis element");
            Rational v;
            try {
                v = parse_rational(coef);
            } catch (const ParseError& e) {
                fail(e.what());
            }
            int it = -1;
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (basis[i] == target) it = static_cast<int>(i);
            if (it < 0) fail("unknown basis element '" + target + "'");
            rhs[it] += v;
            any = true;
        }
        if (!any) fail("empty bracket right-hand side");
        for (auto it = rhs.begin(); it != rhs.end();)
            it = it->second == 0 ? rhs.erase(it) : std::next(it);
        if (ia == ib) {
            if (!rhs.empty()) throw AlgebraError("antisymmetry conflict: [" + a + "," + a + "] must vanish");
            return;
        }
        if (given.count({ia, ib})) throw AlgebraError("bracket [" + a + "," + b + "] given twice");
        given[{ia, ib}] = rhs;
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "algebra") {
            if (!(ls >> name)) fail("missing algebra name");
        } else if (kw == "dim") {
            std::string tok;
            if (!(ls >> tok)) fail("missing dimension");
            try {
                std::size_t used = 0;
                dim = std::stoi(tok, &used);
                if (used != tok.size() || dim <= 0) fail("dimension must be a positive integer");
            } catch (const std::logic_error&) {
                fail("dimension must be a positive integer");
            }
        } else if (kw == "basis") {
            std::string id;
            while (ls >> id) {
                for (const auto& b : basis)
                    if (b == id) fail("duplicate basis element '" + id + "'");
                basis.push_back(id);
            }
            have_basis = true;
        } else if (kw == "bracket") {
            if (!have_basis) fail("bracket before basis");
            parse_bracket(ls);
            continue;
        } else {
            fail("unknown keyword '" + kw + "'");
        }
        std::string extra;
        if (ls >> extra) fail("unexpected token '" + extra + "'");
    }
    if (name.empty()) throw ParseError("missing 'algebra <name>' line");
    if (dim < 0) throw ParseError("missing 'dim <d>' line");
    if (static_cast<int>(basis.size()) != dim)
        throw ParseError("basis has " + std::to_string(basis.size()) + " elements, dim is " +
                         std::to_string(dim));

    LieAlgebra L(name, basis);
    for (const auto& [ab, rhs] : given) {
        auto [a, b] = ab;
        if (auto rev = given.find({b, a}); rev != given.end()) {
            std::map<int, Rational> neg;
            for (const auto& [k, v] : rev->second) neg[k] = -v;
            if (neg != rhs)
                throw AlgebraError("antisymmetry conflict between [" + basis[a] + "," + basis[b] +
                                   "] and [" + basis[b] + "," + basis[a] + "]");
        }
        for (const auto& [k, v] : rhs) L.set_bracket(a, b, k, v);
    }
    check_jacobi(L);
    return L;
}

inline std::string to_document(const LieAlgebra& L) {
    std::ostringstream os;
    os << "algebra " << L.name() << "\n" << "dim " << L.dim() << "\n" << "basis";
    for (const auto& b : L.basis()) os << " " << b;
    os << "\n";
    for (const auto& [ij, br] : L.brackets()) {
        os << "bracket " << L.basis()[ij.first] << " " << L.basis()[ij.second] << " ->";
        for (const auto& [k, v] : br) os << " " << v.get_str() << " " << L.basis()[k];
        os << "\n";
    }
    return os.str();
}

struct Normalized {
    LieAlgebra algebra;
    Rational scale;
};

// Rescale x_i -> λ x_i with λ the largest power of two keeping every |c| ≤ 2.
// Constants transform as c -> λ c.
inline Normalized normalize_constants(const LieAlgebra& L) {
    Rational m = L.max_abs_constant();
    Rational lambda = 1;
    if (m != 0) {
        while (m * lambda > 2) lambda /= 2;
        while (m * lambda * 2 <= 2) lambda *= 2;
    }
    LieAlgebra out(L.name(), L.basis());
    for (const auto& [ij, br] : L.brackets())
        for (const auto& [k, v] : br) out.set_bracket(ij.first, ij.second, k, v * lambda);
    return {out, lambda};
}

}  // namespace kquant
