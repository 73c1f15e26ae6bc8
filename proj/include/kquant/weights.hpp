#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "kquant/graphs.hpp"
#include "kquant/log.hpp"
#include "kquant/rational.hpp"

namespace kquant {

using Complex = std::complex<double>;

inline constexpr const char* integrator_version = "mix1";

// Kontsevich angle at z1 towards z2:
// (1/2i) Log[(z2-z1)(conj z2-z1) / ((z2-conj z1)(conj z2-conj z1))], principal
// branch, reduced to [0, 2π).
inline double hyperbolic_angle(Complex z1, Complex z2) {
    if (!(z1.imag() > 0)) throw std::domain_error("hyperbolic_angle: Im z1 must be positive");
    if (z2.imag() < 0) throw std::domain_error("hyperbolic_angle: z2 must lie in the closed upper half-plane");
    if (std::abs(z2 - z1) == 0) throw DegenerateConfiguration("hyperbolic_angle: coincident points");
    Complex num = (z2 - z1) * (std::conj(z2) - z1);
    Complex den = (z2 - std::conj(z1)) * (std::conj(z2) - std::conj(z1));
    Complex ratio = num / den;
    // Principal Log: the cut is approached from above, so ratio ≈ -1 gives +π.
    double arg = ratio.real() < 0 && std::fabs(ratio.imag()) <= 1e-12 * std::abs(ratio) ? std::numbers::pi
                                                                                         : std::arg(ratio);
    double phi = arg / 2;
    const double two_pi = 2 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0) phi += two_pi;
    if (phi >= two_pi) phi -= two_pi;
    return phi;
}

// Dimension of the gauge-fixed configuration space: 2n + m - 2.
inline int domain_dimension(const AdmissibleGraph& g) { return 2 * g.n + g.m - 2; }

inline bool dimension_matches(const AdmissibleGraph& g) { return g.edge_count() == domain_dimension(g); }

// Free points of the gauge slice: all vertices when m = 2 (ground points fixed
// at 0 and 1), all but the last vertex when m = 0 (last vertex fixed at i).
struct ConfigurationPoint {
    std::vector<Complex> points;
};

inline int free_point_count(const AdmissibleGraph& g) { return g.m == 2 ? g.n : g.n - 1; }

namespace detail {

inline Complex ground_position(int index) { return index == 0 ? Complex(0, 0) : Complex(1, 0); }

inline double determinant(std::vector<double> a, int k) {
    double d = 1;
    for (int c = 0; c < k; ++c) {
        int p = c;
        for (int r = c + 1; r < k; ++r)
            if (std::fabs(a[r * k + c]) > std::fabs(a[p * k + c])) p = r;
        if (a[p * k + c] == 0) return 0;
        if (p != c) {
            for (int j = 0; j < k; ++j) std::swap(a[p * k + j], a[c * k + j]);
            d = -d;
        }
        d *= a[c * k + c];
        for (int r = c + 1; r < k; ++r) {
            double f = a[r * k + c] / a[c * k + c];
            for (int j = c; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
        }
    }
    return d;
}

// Row per edge (vertex order, then edge order), column pair per free point
// (Re, Im). Uses φ = arg(z2 - z1) - arg(z2 - conj z1).
inline void angle_jacobian(const AdmissibleGraph& g, const std::vector<Complex>& free, std::vector<double>& J) {
    const int k = static_cast<int>(free.size()) * 2;
    const int nfree = static_cast<int>(free.size());
    J.assign(static_cast<std::size_t>(k) * k, 0.0);
    auto position = [&](int v) { return v < nfree ? free[v] : Complex(0, 1); };
    const Complex I(0, 1);
    int row = 0;
    for (int v = 0; v < g.n; ++v)
        for (const Target& t : g.out[v]) {
            Complex z1 = position(v);
            Complex z2 = t.kind == Target::vertex ? position(t.index) : ground_position(t.index);
            Complex A = z2 - z1, B = z2 - std::conj(z1);
            if (v < nfree) {
                J[row * k + 2 * v] += std::imag(-1.0 / A) - std::imag(-1.0 / B);
                J[row * k + 2 * v + 1] += std::imag(-I / A) - std::imag(I / B);
            }
            if (t.kind == Target::vertex && t.index < nfree) {
                J[row * k + 2 * t.index] += std::imag(1.0 / A) - std::imag(1.0 / B);
                J[row * k + 2 * t.index + 1] += std::imag(I / A) - std::imag(I / B);
            }
            ++row;
        }
}

inline std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Uniform in (0,1), a pure function of (stream, sample, coordinate).
inline double uniform(std::uint64_t stream, std::uint64_t sample, std::uint64_t coord) {
    std::uint64_t z = splitmix(splitmix(stream ^ splitmix(sample)) + coord);
    return ((z >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

// Defensive mixture per point: the Cauchy x transformed-uniform base map,
// 1/r disks around the fixed points, and 1/r disks around earlier points.
class Sampler {
public:
    Sampler(const AdmissibleGraph& g) : nfree_(free_point_count(g)) {
        if (g.m == 2)
            anchors_ = {Complex(0, 0), Complex(1, 0)};
        else
            anchors_ = {Complex(0, 1)};
        if (nfree_ > 1) {
            wb_ = 0.5, wa_ = 0.25, wc_ = 0.25;
        } else {
            wb_ = 2.0 / 3, wa_ = 1.0 / 3, wc_ = 0;
        }
    }

    void draw(std::uint64_t stream, std::uint64_t sample, std::vector<Complex>& p) const {
        p.resize(nfree_);
        for (int v = 0; v < nfree_; ++v) {
            double c = uniform(stream, sample, 3 * v);
            double u = uniform(stream, sample, 3 * v + 1);
            double w = uniform(stream, sample, 3 * v + 2);
            if (c < wb_ || (c >= wb_ + wa_ && v == 0)) {
                p[v] = base_sample(u, w);
            } else if (c < wb_ + wa_) {
                auto a = std::min<std::size_t>(static_cast<std::size_t>((c - wb_) / wa_ * anchors_.size()),
                                               anchors_.size() - 1);
                p[v] = disk_sample(anchors_[a], u, w);
            } else {
                int o = std::min(static_cast<int>((c - wb_ - wa_) / wc_ * v), v - 1);
                p[v] = disk_sample(p[o], u, w);
            }
        }
    }

    double density(const std::vector<Complex>& p) const {
        double total = 1;
        for (int v = 0; v < nfree_; ++v) {
            double d = wb_ * base_pdf(p[v]);
            for (const auto& a : anchors_) d += wa_ / anchors_.size() * disk_pdf(p[v], a);
            if (wc_ > 0) {
                if (v == 0)
                    d += wc_ * base_pdf(p[v]);
                else
                    for (int o = 0; o < v; ++o) d += wc_ / v * disk_pdf(p[v], p[o]);
            }
            total *= d;
        }
        return total;
    }

private:
    static Complex base_sample(double u, double w) {
        return {std::tan(std::numbers::pi * (u - 0.5)), w / (1 - w)};
    }
    static double base_pdf(Complex p) {
        double x = p.real(), y = p.imag();
        return 1.0 / (std::numbers::pi * (1 + x * x)) / ((1 + y) * (1 + y));
    }
    // Real centre: half-disk of radius 1. Interior centre: disk reaching the axis.
    static double radius(Complex a) { return a.imag() > 0 ? a.imag() : 1.0; }
    static Complex disk_sample(Complex a, double u, double w) {
        double r = u * radius(a);
        double th = (a.imag() > 0 ? 2 : 1) * std::numbers::pi * w;
        return a + std::polar(r, th);
    }
    static double disk_pdf(Complex p, Complex a) {
        double R = radius(a), r = std::abs(p - a);
        if (r >= R) return 0;
        return a.imag() > 0 ? 1.0 / (2 * std::numbers::pi * r * R) : 1.0 / (std::numbers::pi * r * R);
    }

    int nfree_;
    std::vector<Complex> anchors_;
    double wb_, wa_, wc_;
};

}  // namespace detail

// det J / (2π)^k for the angle map on the gauge slice.
inline double pullback_density(const AdmissibleGraph& g, const ConfigurationPoint& c) {
    const int k = g.edge_count();
    if (k != domain_dimension(g))
        throw DimensionMismatch("form degree " + std::to_string(k) + " differs from domain dimension " +
                                std::to_string(domain_dimension(g)) + "; the weight is 0");
    const int nfree = free_point_count(g);
    if (static_cast<int>(c.points.size()) != nfree)
        throw std::invalid_argument("configuration has " + std::to_string(c.points.size()) +
                                    " points, graph needs " + std::to_string(nfree));
    std::vector<Complex> all = c.points;
    if (g.m == 0) all.push_back(Complex(0, 1));
    for (std::size_t a = 0; a < all.size(); ++a) {
        if (!(all[a].imag() > 0)) throw DegenerateConfiguration("point with nonpositive imaginary part");
        for (std::size_t b = 0; b < a; ++b)
            if (std::abs(all[a] - all[b]) < 1e-12) throw DegenerateConfiguration("coincident points");
    }
    std::vector<double> J;
    detail::angle_jacobian(g, c.points, J);
    return detail::determinant(J, k) / std::pow(2 * std::numbers::pi, k);
}

struct WeightEstimate {
    std::string graph;
    double mean = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string integrator = integrator_version;
};

inline std::string format(const WeightEstimate& e) {
    std::ostringstream os;
    os << std::setprecision(6) << e.mean << " ± " << e.std_error << " (" << e.samples << " samples, seed "
       << e.seed << ")";
    return os.str();
}

inline unsigned default_workers() {
    if (const char* env = std::getenv("KQUANT_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return static_cast<unsigned>(w);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

struct McOptions {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0: default_workers()
};

inline constexpr std::uint64_t mc_block_size = 4096;
inline constexpr std::uint64_t mc_min_samples = 10'000;

// Importance-sampled integral of the pullback density. Samples are split into
// fixed blocks whose partial sums are merged in block order, so the result does
// not depend on the number of workers.
inline WeightEstimate mc_weight(const AdmissibleGraph& g, const McOptions& opt = {}) {
    validate(g);
    WeightEstimate est{encode(g), 0, 0, opt.samples, opt.seed, integrator_version};
    if (opt.samples < mc_min_samples)
        throw std::invalid_argument("mc_weight needs at least " + std::to_string(mc_min_samples) + " samples");
    if (!dimension_matches(g)) return est;
    if (free_point_count(g) == 0) {
        est.mean = 1;  // a point: empty product of forms
        return est;
    }
    const std::uint64_t stream = detail::splitmix(opt.seed) ^ detail::fnv1a(est.graph);
    const std::uint64_t blocks = (opt.samples + mc_block_size - 1) / mc_block_size;
    std::vector<double> sum(blocks, 0.0), sum_sq(blocks, 0.0);
    const detail::Sampler sampler(g);
    const int k = g.edge_count();
    const double norm = std::pow(2 * std::numbers::pi, k);

    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        std::vector<Complex> p;
        std::vector<double> J;
        for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;) {
            const std::uint64_t lo = b * mc_block_size, hi = std::min(opt.samples, lo + mc_block_size);
            double s = 0, s2 = 0;
            for (std::uint64_t i = lo; i < hi; ++i) {
                sampler.draw(stream, i, p);
                detail::angle_jacobian(g, p, J);
                double f = detail::determinant(J, k) / norm / sampler.density(p);
                s += f;
                s2 += f * f;
            }
            sum[b] = s;
            sum_sq[b] = s2;
        }
    };
    unsigned workers = opt.workers ? opt.workers : default_workers();
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    double s = 0, s2 = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        s += sum[b];
        s2 += sum_sq[b];
    }
    const double n = static_cast<double>(opt.samples);
    est.mean = s / n;
    est.std_error = std::sqrt(std::max(0.0, s2 / n - est.mean * est.mean) / (n - 1));
    return est;
}

struct WeightTable {
    std::map<std::string, Rational> weights;  // canonical encoding -> w
    std::map<std::string, std::string> provenance;
    int max_order = -1;

    std::optional<Rational> lookup(const std::string& enc) const {
        auto it = weights.find(enc);
        if (it == weights.end()) return std::nullopt;
        return it->second;
    }
    void set(const AdmissibleGraph& g, const Rational& w, const std::string& prov) {
        std::string enc = encode(g);
        weights[enc] = w;
        provenance[enc] = prov;
    }
};

// Weight file / cache. Exact entries are keyed by encoding; MC entries by
// (encoding, samples, seed). The gauge is implied by the encoding (K: ground
// points 0 and 1, C: last vertex at i).
class WeightCache {
public:
    struct Exact {
        Rational value;
        std::string provenance;
    };

    void store(const std::string& enc, const Rational& w, const std::string& provenance) {
        exact_[enc] = {w, provenance};
    }
    void store(const WeightEstimate& e) { mc_[{e.graph, e.samples, e.seed}] = e; }
    void store(const WeightTable& t) {
        for (const auto& [enc, w] : t.weights) {
            auto p = t.provenance.find(enc);
            store(enc, w, p == t.provenance.end() ? "table" : p->second);
        }
    }

    std::optional<Exact> load_exact(const std::string& enc) const {
        auto it = exact_.find(enc);
        if (it == exact_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<WeightEstimate> load_mc(const std::string& enc, std::uint64_t samples, std::uint64_t seed) const {
        auto it = mc_.find({enc, samples, seed});
        if (it == mc_.end()) return std::nullopt;
        return it->second;
    }
    std::vector<WeightEstimate> estimates_for(const std::string& enc) const {
        std::vector<WeightEstimate> out;
        for (const auto& [key, e] : mc_)
            if (std::get<0>(key) == enc) out.push_back(e);
        return out;
    }

    const std::map<std::string, Exact>& exact_entries() const { return exact_; }
    const std::map<std::tuple<std::string, std::uint64_t, std::uint64_t>, WeightEstimate>& mc_entries() const {
        return mc_;
    }

    // Table of all exact entries for graphs of order ≤ max_order.
    WeightTable table(int max_order) const {
        WeightTable t;
        for (const auto& [enc, e] : exact_) {
            if (enc.empty() || enc[0] != 'K') continue;
            if (parse_graph(enc).n > max_order) continue;
            t.weights[enc] = e.value;
            t.provenance[enc] = e.provenance;
        }
        t.max_order = max_order;
        return t;
    }

    std::string serialize() const {
        std::ostringstream os;
        for (const auto& [enc, e] : exact_) os << enc << " exact " << e.value.get_str() << " " << e.provenance << "\n";
        os << std::setprecision(17);
        for (const auto& [key, e] : mc_)
            os << e.graph << " mc " << e.mean << " " << e.std_error << " " << e.samples << " " << e.seed << " "
               << e.integrator << "\n";
        return os.str();
    }

    static WeightCache parse(const std::string& text) {
        WeightCache c;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            std::istringstream ls(line);
            std::string enc, kind;
            if (!(ls >> enc)) continue;
            auto fail = [&](const std::string& msg) {
                throw ParseError("weight cache line " + std::to_string(lineno) + ": " + msg);
            };
            if (!(ls >> kind)) fail("missing entry kind");
            try {
                enc = encode(parse_graph(enc));
            } catch (const ParseError& e) {
                fail(e.what());
            }
            if (kind == "exact") {
                std::string value, prov;
                if (!(ls >> value)) fail("missing value");
                std::getline(ls >> std::ws, prov);
                try {
                    c.store(enc, parse_rational(value), prov);
                } catch (const ParseError& e) {
                    fail(e.what());
                }
            } else if (kind == "mc") {
                WeightEstimate e;
                e.graph = enc;
                std::string mean, se;
                if (!(ls >> mean >> se >> e.samples >> e.seed >> e.integrator)) fail("malformed mc entry");
                e.mean = std::stod(mean);
                e.std_error = std::stod(se);
                if (e.integrator != integrator_version) {
                    log::warn("ignoring cached estimate for " + enc + " from integrator '" + e.integrator +
                              "' (current '" + integrator_version + "')");
                    continue;
                }
                c.store(e);
            } else {
                fail("unknown entry kind '" + kind + "'");
            }
        }
        return c;
    }

    static WeightCache load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) return {};
        std::stringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }
    void save_file(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write weight cache '" + path + "'");
        out << serialize();
    }

private:
    std::map<std::string, Exact> exact_;
    std::map<std::tuple<std::string, std::uint64_t, std::uint64_t>, WeightEstimate> mc_;
};

// mc_weight, reusing or filling a cache when one is given.
inline WeightEstimate cached_mc_weight(const AdmissibleGraph& g, const McOptions& opt, WeightCache* cache) {
    if (cache)
        if (auto hit = cache->load_mc(encode(g), opt.samples, opt.seed)) return *hit;
    WeightEstimate e = mc_weight(g, opt);
    if (cache) cache->store(e);
    return e;
}

}  // namespace kquant
