#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "kquant/errors.hpp"
#include "kquant/rational.hpp"

namespace kquant {

struct Target {
    enum Kind : std::uint8_t { vertex, ground };
    Kind kind = vertex;
    int index = 0;  // 0-based vertex, or 0 = L, 1 = R

    static Target to_vertex(int i) { return {vertex, i}; }
    static Target left() { return {ground, 0}; }
    static Target right() { return {ground, 1}; }
    friend bool operator==(const Target&, const Target&) = default;
};

// First-type vertices 0..n-1 with ordered out-edge lists; m ground vertices
// (0 or 2) that never carry edges.
struct AdmissibleGraph {
    int n = 0;
    int m = 2;
    std::vector<std::vector<Target>> out;

    int edge_count() const {
        int k = 0;
        for (const auto& e : out) k += static_cast<int>(e.size());
        return k;
    }
    std::vector<int> in_degrees() const {
        std::vector<int> deg(n, 0);
        for (const auto& e : out)
            for (const auto& t : e)
                if (t.kind == Target::vertex) ++deg[t.index];
        return deg;
    }
    friend bool operator==(const AdmissibleGraph&, const AdmissibleGraph&) = default;
};

enum class GraphClass { general, linear, wheel };

inline void validate(const AdmissibleGraph& g) {
    if (g.n < 0) throw GraphError("negative vertex count");
    if (g.m != 0 && g.m != 2) throw GraphError("ground vertex count must be 0 or 2");
    if (static_cast<int>(g.out.size()) != g.n) throw GraphError("one out-edge list per vertex required");
    for (int i = 0; i < g.n; ++i) {
        const auto& e = g.out[i];
        for (std::size_t a = 0; a < e.size(); ++a) {
            const Target& t = e[a];
            if (t.kind == Target::vertex) {
                if (t.index < 0 || t.index >= g.n)
                    throw GraphError("edge from vertex " + std::to_string(i + 1) + " to missing vertex");
                if (t.index == i) throw GraphError("loop at vertex " + std::to_string(i + 1));
            } else if (t.index < 0 || t.index >= g.m) {
                throw GraphError("edge from vertex " + std::to_string(i + 1) + " to missing ground vertex");
            }
            for (std::size_t b = 0; b < a; ++b)
                if (e[b] == t) throw GraphError("repeated edge at vertex " + std::to_string(i + 1));
        }
    }
}

inline bool in_class(const AdmissibleGraph& g, GraphClass c) {
    if (c == GraphClass::wheel) return g.m == 0;
    if (g.m != 2) return false;
    for (const auto& e : g.out)
        if (e.size() != 2) return false;
    if (c == GraphClass::linear)
        for (int d : g.in_degrees())
            if (d > 1) return false;
    return true;
}

inline std::string encode(const AdmissibleGraph& g) {
    std::string s = (g.m == 2 ? "K" : "C") + std::to_string(g.n) + ":";
    for (int i = 0; i < g.n; ++i) {
        if (i) s += ';';
        s += '(';
        for (std::size_t a = 0; a < g.out[i].size(); ++a) {
            if (a) s += ',';
            const Target& t = g.out[i][a];
            if (t.kind == Target::vertex)
                s += std::to_string(t.index + 1);
            else
                s += t.index == 0 ? 'L' : 'R';
        }
        s += ')';
    }
    return s;
}

// Wheel with k rim vertices 0..k-1 and hub k; rim i points to rim i+1 (cyclic)
// and then to the hub.
inline AdmissibleGraph wheel(int k) {
    if (k < 2) throw GraphError("a wheel needs at least 2 rim vertices (k=1 would be a loop)");
    AdmissibleGraph g{k + 1, 0, std::vector<std::vector<Target>>(k + 1)};
    for (int i = 0; i < k; ++i) g.out[i] = {Target::to_vertex((i + 1) % k), Target::to_vertex(k)};
    return g;
}

inline AdmissibleGraph parse_graph(const std::string& text) {
    auto fail = [&](const std::string& msg) -> AdmissibleGraph {
        throw ParseError("graph '" + text + "': " + msg);
    };
    if (text.size() >= 2 && text[0] == 'W') {
        int k = 0;
        for (std::size_t i = 1; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) return fail("bad wheel size");
            k = k * 10 + (text[i] - '0');
            if (k > 1000) return fail("wheel too large");
        }
        return wheel(k);
    }
    if (text.empty() || (text[0] != 'K' && text[0] != 'C')) return fail("expected K<n>:, C<n>: or W<k>");
    auto colon = text.find(':');
    if (colon == std::string::npos || colon == 1) return fail("missing vertex count");
    int n = 0;
    for (std::size_t i = 1; i < colon; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return fail("bad vertex count");
        n = n * 10 + (text[i] - '0');
        if (n > 64) return fail("vertex count too large");
    }
    AdmissibleGraph g{n, text[0] == 'K' ? 2 : 0, {}};
    std::size_t pos = colon + 1;
    for (int v = 0; v < n; ++v) {
        if (v > 0) {
            if (pos >= text.size() || text[pos] != ';') return fail("expected ';'");
            ++pos;
        }
        if (pos >= text.size() || text[pos] != '(') return fail("expected '('");
        auto close = text.find(')', pos);
        if (close == std::string::npos) return fail("unclosed '('");
        std::string body = text.substr(pos + 1, close - pos - 1);
        pos = close + 1;
        std::vector<Target> edges;
        std::size_t start = 0;
        while (!body.empty() && start <= body.size()) {
            auto comma = body.find(',', start);
            std::string tok = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (tok == "L" && g.m == 2)
                edges.push_back(Target::left());
            else if (tok == "R" && g.m == 2)
                edges.push_back(Target::right());
            else {
                if (tok.empty() || tok.size() > 3 ||
                    !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
                    return fail("bad target '" + tok + "'");
                int t = std::stoi(tok);
                if (t < 1 || t > n) return fail("target " + tok + " out of range");
                edges.push_back(Target::to_vertex(t - 1));
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        g.out.push_back(std::move(edges));
    }
    if (pos != text.size()) return fail("trailing characters");
    try {
        validate(g);
    } catch (const GraphError& e) {
        throw ParseError("graph '" + text + "': " + e.what());
    }
    return g;
}

// Graph with vertex i renamed perm[i].
inline AdmissibleGraph relabel(const AdmissibleGraph& g, const std::vector<int>& perm) {
    AdmissibleGraph h{g.n, g.m, std::vector<std::vector<Target>>(g.n)};
    for (int i = 0; i < g.n; ++i) {
        auto edges = g.out[i];
        for (auto& t : edges)
            if (t.kind == Target::vertex) t.index = perm[t.index];
        h.out[perm[i]] = std::move(edges);
    }
    return h;
}

inline constexpr int default_graph_ceiling = 5;

namespace detail {

inline void check_ceiling(int n, int ceiling) {
    if (n < 0) throw GraphError("graph order must be nonnegative");
    if (n > ceiling)
        throw ResourceLimit("graph order " + std::to_string(n) + " exceeds the ceiling " +
                            std::to_string(ceiling));
}

// Depth-first over vertices, each picking an ordered pair of distinct targets.
// For the linear class a vertex target is refused once it already has an
// incoming edge.
template <typename Visit>
void for_each_graph(int n, GraphClass cls, Visit&& visit) {
    std::vector<Target> targets{Target::left(), Target::right()};
    for (int i = 0; i < n; ++i) targets.push_back(Target::to_vertex(i));
    AdmissibleGraph g{n, 2, std::vector<std::vector<Target>>(n)};
    std::vector<int> indeg(n, 0);
    const bool linear = cls == GraphClass::linear;
    auto usable = [&](const Target& t, int self) {
        if (t.kind != Target::vertex) return true;
        return t.index != self && (!linear || indeg[t.index] == 0);
    };
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            visit(g);
            return;
        }
        for (const Target& a : targets) {
            if (!usable(a, v)) continue;
            if (a.kind == Target::vertex) ++indeg[a.index];
            for (const Target& b : targets) {
                if (b == a || !usable(b, v)) continue;
                if (b.kind == Target::vertex) ++indeg[b.index];
                g.out[v] = {a, b};
                self(self, v + 1);
                if (b.kind == Target::vertex) --indeg[b.index];
            }
            if (a.kind == Target::vertex) --indeg[a.index];
        }
    };
    rec(rec, 0);
}

}  // namespace detail

// Labeled graphs of G_n or A_n, sorted by canonical encoding.
inline std::vector<AdmissibleGraph> enumerate_graphs(int n, GraphClass cls, int ceiling = default_graph_ceiling) {
    if (cls == GraphClass::wheel) throw GraphError("wheels are built with wheel(k), not enumerated");
    detail::check_ceiling(n, ceiling);
    std::vector<std::pair<std::string, AdmissibleGraph>> found;
    detail::for_each_graph(n, cls, [&](const AdmissibleGraph& g) { found.emplace_back(encode(g), g); });
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<AdmissibleGraph> out;
    out.reserve(found.size());
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
}

inline std::uint64_t count_graphs(int n, GraphClass cls, int ceiling = default_graph_ceiling) {
    detail::check_ceiling(n, ceiling);
    std::uint64_t count = 0;
    detail::for_each_graph(n, cls, [&](const AdmissibleGraph&) { ++count; });
    return count;
}

// (8e)^n n! with a rational lower bound for e, so |A_n| < bound is rigorous.
inline Rational linear_count_bound(int n) {
    return pow(8 * e_lower_bound(), static_cast<unsigned>(n)) * Rational(factorial(static_cast<unsigned>(n)));
}

}  // namespace kquant
