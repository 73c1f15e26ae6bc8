#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kquant/bundled_weights.hpp"
#include "kquant/duflo.hpp"
#include "kquant/expr.hpp"
#include "kquant/fixtures.hpp"
#include "kquant/table_solver.hpp"

namespace kquant::cli {

enum Exit { success = 0, verification_failure = 1, usage_error = 2 };

// Dual-format output: "key: value" lines, or KEY<TAB>VALUE with --format machine.
class Report {
public:
    void add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
    template <typename T>
    void add(const std::string& key, const T& value) {
        std::ostringstream os;
        os << value;
        add(key, os.str());
    }
    void print(std::ostream& out, bool machine) const {
        for (const auto& [k, v] : rows_) {
            if (machine) {
                std::string key = k;
                for (auto& c : key) c = c == ' ' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                std::string val = v;
                for (auto& c : val)
                    if (c == '\t' || c == '\n') c = ' ';
                out << key << "\t" << val << "\n";
            } else {
                out << k << ": " << v << "\n";
            }
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

struct Options {
    std::string format = "text";
    unsigned workers = 0;
    std::string cache;
    bool no_cache = false;
    std::string algebra = "sl2";
    int degree = 2;
    int n = -1;
    std::string graph_class = "A";
    std::string graph;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    double tolerance = 4;
    std::string out_path;
    std::string f, g, p, q, r;
    int cap = 2;
    int order = 2;
    int depth = 2;
    int kmax = 1;
    bool no_mc = false;
};

inline std::string default_cache_path() {
    if (const char* env = std::getenv("KQUANT_CACHE")) return env;
    return "kquant-weights.cache";
}

inline LieAlgebra resolve_algebra(const std::string& name) {
    const auto& bundled = fixtures::algebras();
    if (auto it = bundled.find(name); it != bundled.end()) return load_algebra(it->second);
    std::ifstream in(name);
    if (!in) throw ParseError("unknown algebra '" + name + "' (not a bundled name or readable file)");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_algebra(ss.str());
}

inline bool covers_low_orders(const WeightTable& t, int max_n) {
    for (int n = 0; n <= max_n; ++n)
        for (const auto& g : enumerate_graphs(n, GraphClass::linear))
            if (!t.lookup(encode(g))) return false;
    return true;
}

// Exact table from the cache file when it covers n ≤ 2, else the bundled one.
inline WeightTable resolve_table(const Options& o, Report& rep) {
    if (!o.no_cache && std::filesystem::exists(o.cache)) {
        WeightTable t = WeightCache::load_file(o.cache).table(2);
        if (covers_low_orders(t, 2)) {
            rep.add("table", "cache " + o.cache);
            return t;
        }
    }
    rep.add("table", "bundled exact n<=2 table");
    return bundled_weight_table();
}

struct Session {
    Options o;
    Report rep;
    std::optional<LieAlgebra> algebra;
    std::optional<StarContext> ctx;

    const LieAlgebra& load() {
        if (!algebra) {
            algebra = resolve_algebra(o.algebra);
            auto norm = normalize_constants(*algebra);
            rep.add("algebra", algebra->name());
            rep.add("scale", norm.scale.get_str());
            algebra = norm.algebra;
        }
        return *algebra;
    }
    const StarContext& context(int max_n = 2) {
        if (max_n > default_graph_ceiling)
            throw ResourceLimit("--n " + std::to_string(max_n) + " exceeds the graph-order ceiling " +
                                std::to_string(default_graph_ceiling));
        if (!ctx) {
            load();
            WeightTable t = resolve_table(o, rep);
            if (max_n > 2)
                throw CoverageError(3, "--n " + std::to_string(max_n) + " needs weights beyond order 2");
            ctx.emplace(*algebra, t, max_n);
        }
        return *ctx;
    }
    Polynomial poly(const std::string& s) { return parse_poly_expr(s, load()); }
    std::string fmt(const Polynomial& p) { return format(p, load().basis()); }
    std::string fmt(const UEnvElement& u) { return format(u, load().basis()); }
};

inline int run_algebra_check(Session& s) {
    try {
        s.load();
    } catch (const AlgebraError& e) {
        s.rep.add("valid", "no");
        s.rep.add("error", e.what());
        return verification_failure;
    }
    s.rep.add("dim", s.algebra->dim());
    s.rep.add("valid", "yes");
    return success;
}

inline int run_algebra_normalize(Session& s, std::ostream& out) {
    const LieAlgebra& L = s.load();
    s.rep.add("normalized", "");
    s.rep.print(out, s.o.format == "machine");
    out << to_document(L);
    return -1;  // already printed
}

inline int run_invariants(Session& s) {
    const LieAlgebra& L = s.load();
    auto basis = find_invariants(L, s.o.degree);
    s.rep.add("degree", s.o.degree);
    s.rep.add("count", basis.elements.size());
    for (std::size_t i = 0; i < basis.elements.size(); ++i) s.rep.add("invariant " + std::to_string(i + 1), s.fmt(basis.elements[i]));
    return success;
}

inline GraphClass parse_class(const std::string& c) {
    if (c == "A") return GraphClass::linear;
    if (c == "G") return GraphClass::general;
    throw CLI::ValidationError("--class", "expected A or G, got '" + c + "'");
}

inline int run_graphs(Session& s, bool list) {
    if (s.o.n < 0) throw CLI::ValidationError("--n", "graph order required");
    GraphClass cls = parse_class(s.o.graph_class);
    s.rep.add("n", s.o.n);
    s.rep.add("class", s.o.graph_class);
    if (!list) {
        s.rep.add("count", count_graphs(s.o.n, cls));
        if (cls == GraphClass::linear) s.rep.add("bound (8e)^n n!", linear_count_bound(s.o.n).get_d());
        return success;
    }
    auto graphs = enumerate_graphs(s.o.n, cls);
    s.rep.add("count", graphs.size());
    for (const auto& g : graphs) s.rep.add("graph", encode(g));
    return success;
}

inline int run_weights_mc(Session& s) {
    AdmissibleGraph g = parse_graph(s.o.graph);
    McOptions mc{s.o.samples, s.o.seed, s.o.workers};
    std::optional<WeightCache> cache;
    if (!s.o.no_cache) cache = WeightCache::load_file(s.o.cache);
    WeightEstimate e = cached_mc_weight(g, mc, cache ? &*cache : nullptr);
    if (cache) cache->save_file(s.o.cache);
    s.rep.add("graph", e.graph);
    s.rep.add("dimension match", dimension_matches(g) ? "yes" : "no (weight is 0)");
    s.rep.add("seed", e.seed);
    s.rep.add("samples", e.samples);
    std::ostringstream os;
    os << std::setprecision(17) << e.mean;
    s.rep.add("mean", os.str());
    os.str("");
    os << e.std_error;
    s.rep.add("stderr", os.str());
    s.rep.add("estimate", format(e));
    return success;
}

inline int run_weights_table(Session& s) {
    TableSolveOptions opt;
    opt.mc = {s.o.samples, s.o.seed, s.o.workers};
    opt.tolerance = s.o.tolerance;
    std::optional<WeightCache> cache;
    if (!s.o.no_cache) cache = WeightCache::load_file(s.o.cache);
    opt.cache = cache ? &*cache : nullptr;
    TableSolveResult res;
    try {
        res = solve_low_order_table(opt);
    } catch (const ReconstructionError& e) {
        s.rep.add("error", e.what());
        return verification_failure;
    } catch (const InconsistentConstraints& e) {
        s.rep.add("error", e.what());
        return verification_failure;
    }
    s.rep.add("seed", s.o.seed);
    s.rep.add("samples", s.o.samples);
    for (const auto& o : res.orbits) {
        std::ostringstream os;
        os << o.value.get_str() << " (mc " << std::setprecision(6) << o.mean << " ± " << o.std_error << ", "
           << o.members.size() << " graphs)";
        s.rep.add("orbit " + o.members.front(), os.str());
    }
    for (const auto& c : res.checks) s.rep.add("check", c + ": pass");
    if (cache) {
        cache->store(res.table);
        cache->save_file(s.o.cache);
        s.rep.add("cache", s.o.cache);
    }
    if (!s.o.out_path.empty()) {
        WeightCache out;
        out.store(res.table);
        out.save_file(s.o.out_path);
        s.rep.add("written", s.o.out_path);
    }
    return success;
}

inline int run_weights_cache(Session& s) {
    WeightCache c = WeightCache::load_file(s.o.cache);
    s.rep.add("cache", s.o.cache);
    s.rep.add("exact entries", c.exact_entries().size());
    s.rep.add("mc entries", c.mc_entries().size());
    for (const auto& [enc, e] : c.exact_entries()) s.rep.add(enc, e.value.get_str() + " (" + e.provenance + ")");
    for (const auto& [key, e] : c.mc_entries()) s.rep.add(e.graph, format(e));
    return success;
}

inline int run_star_mul(Session& s) {
    int max_n = s.o.n < 0 ? 2 : s.o.n;
    const StarContext& ctx = s.context(max_n);
    Polynomial f = s.poly(s.o.f), g = s.poly(s.o.g);
    GradedResult r = star_truncated(f, g, ctx, max_n);
    s.rep.add("product", s.fmt(r.value));
    s.rep.add("exact from degree", r.exact_from);
    s.rep.add("exact", r.exact_from == 0 ? "yes" : "graded truncation");
    return success;
}

inline int run_star_op(Session& s) {
    const StarContext& ctx = s.context();
    Polynomial p = s.poly(s.o.p);
    RightOperator op = extract_right_operator(p, ctx, s.o.cap, true);
    s.rep.add("operator", format(op.op, s.load().basis()));
    s.rep.add("order", op.op.order());
    s.rep.add("degree of p", p.degree());
    bool ok = op.op.order() <= std::max(0, p.degree());
    const std::size_t d = ctx.algebra().dim();
    for (int k = 0; k <= s.o.cap; ++k)
        for (const auto& e : monomials_of_degree(d, k)) {
            Polynomial r = Polynomial::monomial(e);
            GradedResult lhs = star_truncated(r, p, ctx);
            Polynomial rhs = apply_right_operator(r, op.op);
            if ((lhs.value - rhs).components_from(lhs.exact_from) != Polynomial(d)) ok = false;
        }
    s.rep.add("defining identity on monomials", ok ? "holds" : "FAILS");
    return ok ? success : verification_failure;
}

inline int run_star_bound(Session& s) {
    int n_max = s.o.n < 0 ? 3 : s.o.n;
    if (n_max > default_graph_ceiling)
        throw ResourceLimit("--n " + std::to_string(n_max) + " exceeds the graph-order ceiling " +
                            std::to_string(default_graph_ceiling));
    const StarContext& ctx = s.context();
    BoundReport b = coefficient_bound_report(s.poly(s.o.p), ctx, n_max);
    s.rep.add("orders", "n <= " + std::to_string(n_max) + " (exact for n <= " + std::to_string(ctx.max_n()) + ")");
    s.rep.add("coefficients", b.entries.size());
    s.rep.add("max ratio", b.max_ratio);
    s.rep.add("bound", b.pass ? "holds" : "VIOLATED");
    return b.pass ? success : verification_failure;
}

inline WheelCoefficients solve_wheels(Session& s, int kmax, bool with_mc) {
    std::optional<McOptions> mc;
    if (with_mc) mc = McOptions{s.o.samples, s.o.seed, s.o.workers};
    return solve_wheel_coeffs(s.context(), kmax, mc);
}

inline int run_duflo(Session& s, const std::string& which) {
    const LieAlgebra& L = s.load();
    if (which == "qjet") {
        s.rep.add("q", s.fmt(q_jet(L, s.o.order).poly));
    } else if (which == "taujet") {
        WheelCoefficients wc;
        bool traces = false;
        for (int k = 1; 2 * k <= s.o.order; ++k) traces = traces || !trace_power_poly(L, k).is_zero();
        if (traces) wc = solve_wheels(s, s.o.order / 2, false);
        for (const auto& [k, c] : wc) s.rep.add("c_" + std::to_string(2 * k), c.value.get_str());
        s.rep.add("tau", s.fmt(tau_jet(L, s.o.order, wc).poly));
    } else if (which == "eta") {
        s.rep.add("eta", s.fmt(eta(s.poly(s.o.p), L)));
    } else {
        Polynomial p1 = s.poly(s.o.p), p2 = s.poly(s.o.q);
        bool asserted = is_invariant(L, p1) && is_invariant(L, p2);
        UEnvElement res = duflo_residual(p1, p2, L);
        s.rep.add("residual", s.fmt(res));
        s.rep.add("asserted", asserted ? "yes (both inputs invariant)" : "no (non-invariant input)");
        if (asserted && !res.is_zero()) return verification_failure;
    }
    return success;
}

inline int run_kv(Session& s) {
    const StarContext& ctx = s.context();
    const LieAlgebra& L = ctx.algebra();
    Polynomial r = s.poly(s.o.r), p = s.poly(s.o.p);
    WheelCoefficients wc;
    bool traces = false;
    for (int k = 1; 2 * k <= s.o.depth; ++k) traces = traces || !trace_power_poly(L, k).is_zero();
    if (traces) wc = solve_wheels(s, s.o.depth / 2, false);
    auto comps = kv_graded_residual(r, p, ctx, s.o.depth, wc);
    bool asserted = is_invariant(L, r) && is_invariant(L, p);
    bool zero = true;
    for (const auto& c : comps) {
        s.rep.add("degree " + std::to_string(c.degree), s.fmt(c.value));
        zero = zero && c.value.is_zero();
    }
    s.rep.add("asserted", asserted ? "yes (both inputs invariant)" : "no (non-invariant input)");
    s.rep.add("residual", zero ? "0" : "nonzero");
    return asserted && !zero ? verification_failure : success;
}

inline int run_wheels(Session& s) {
    WheelCoefficients wc = solve_wheels(s, s.o.kmax, !s.o.no_mc);
    bool ok = true;
    for (const auto& [k, c] : wc) {
        std::string key = "c_" + std::to_string(2 * k);
        s.rep.add(key, c.value.get_str());
        bool bound = abs(c.value) <= pow(Rational(2), 2 * k);
        s.rep.add(key + " bound |c| <= 2^" + std::to_string(2 * k), bound ? "holds" : "VIOLATED");
        ok = ok && bound;
        if (c.mc) {
            s.rep.add(key + " wheel estimate", format(*c.mc));
            std::ostringstream os;
            os << std::setprecision(6) << c.mc_value() << " ± " << c.mc_error();
            s.rep.add(key + " from wheel weight", os.str());
            s.rep.add(key + " agreement", c.mc_agrees ? "within 3 stderr" : "DISAGREES");
            ok = ok && c.mc_agrees;
        }
    }
    return ok ? success : verification_failure;
}

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deformation quantization on duals of Lie algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Session s;
    Options& o = s.o;
    o.cache = default_cache_path();
    app.add_option("--format", o.format, "text or machine (KEY<TAB>VALUE)")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--workers", o.workers, "Monte Carlo worker threads (default: $KQUANT_WORKERS or all cores)");
    app.add_option("--cache", o.cache, "weight cache file");
    app.add_flag("--no-cache", o.no_cache, "ignore the weight cache");

    auto algebra_opt = [&](CLI::App* c) { c->add_option("--algebra", o.algebra, "bundled name or algebra file"); };

    auto* alg = app.add_subcommand("algebra", "load, validate and normalize algebras")->require_subcommand(1);
    auto* alg_check = alg->add_subcommand("check", "validate an algebra file");
    auto* alg_norm = alg->add_subcommand("normalize", "print the normalized algebra");
    algebra_opt(alg_check);
    algebra_opt(alg_norm);

    auto* inv = app.add_subcommand("invariants", "basis of invariants up to a degree");
    algebra_opt(inv);
    inv->add_option("--degree", o.degree)->check(CLI::Range(0, 12));

    auto* graphs = app.add_subcommand("graphs", "enumerate admissible graphs")->require_subcommand(1);
    auto* g_count = graphs->add_subcommand("count", "count G_n or A_n");
    auto* g_list = graphs->add_subcommand("list", "list G_n or A_n in canonical order");
    for (auto* c : {g_count, g_list}) {
        c->add_option("--n", o.n)->required();
        c->add_option("--class", o.graph_class, "A or G");
    }

    auto* weights = app.add_subcommand("weights", "graph weights")->require_subcommand(1);
    auto* w_mc = weights->add_subcommand("mc", "Monte Carlo weight of one graph");
    w_mc->add_option("--graph", o.graph, "canonical encoding or W<k>")->required();
    auto* w_table = weights->add_subcommand("table", "solve the exact n <= 2 table from Monte Carlo");
    w_table->add_option("--tolerance", o.tolerance, "window in standard errors");
    w_table->add_option("--out", o.out_path, "write the table to this file");
    for (auto* c : {w_mc, w_table}) {
        c->add_option("--samples", o.samples)->check(CLI::Range(std::uint64_t{10'000}, std::uint64_t{1'000'000'000'000}));
        c->add_option("--seed", o.seed);
    }
    auto* w_cache = weights->add_subcommand("cache", "list cache entries");

    auto* starc = app.add_subcommand("star", "star products")->require_subcommand(1);
    auto* s_mul = starc->add_subcommand("mul", "f ⋆ g");
    s_mul->add_option("--f", o.f)->required();
    s_mul->add_option("--g", o.g)->required();
    s_mul->add_option("--n", o.n, "graph-order limit");
    auto* s_op = starc->add_subcommand("op", "right operator of p");
    s_op->add_option("--p", o.p)->required();
    s_op->add_option("--cap", o.cap, "coefficient degree cap")->check(CLI::Range(0, 6));
    auto* s_bound = starc->add_subcommand("bound", "coefficient bound for a monomial p");
    s_bound->add_option("--p", o.p)->required();
    s_bound->add_option("--n", o.n, "highest graph order");
    for (auto* c : {s_mul, s_op, s_bound}) algebra_opt(c);

    auto* duflo = app.add_subcommand("duflo", "Duflo map")->require_subcommand(1);
    auto* d_q = duflo->add_subcommand("qjet", "jet of q");
    auto* d_tau = duflo->add_subcommand("taujet", "jet of tau");
    for (auto* c : {d_q, d_tau}) c->add_option("--order", o.order)->check(CLI::Range(0, 8));
    auto* d_eta = duflo->add_subcommand("eta", "eta(p)");
    d_eta->add_option("--p", o.p)->required();
    auto* d_verify = duflo->add_subcommand("verify", "eta(p q) - eta(p) eta(q)");
    d_verify->add_option("--p", o.p)->required();
    d_verify->add_option("--q", o.q)->required();
    for (auto* c : {d_q, d_tau, d_eta, d_verify}) algebra_opt(c);

    auto* kv = app.add_subcommand("kv", "Kashiwara-Vergne residuals")->require_subcommand(1);
    auto* kv_res = kv->add_subcommand("residual", "graded residual (r p)tau - (r tau) * (p tau)");
    kv_res->add_option("--r", o.r)->required();
    kv_res->add_option("--p", o.p)->required();
    kv_res->add_option("--depth", o.depth)->check(CLI::Range(0, 8));
    algebra_opt(kv_res);

    auto* wheels = app.add_subcommand("wheels", "wheel coefficients")->require_subcommand(1);
    auto* wh_solve = wheels->add_subcommand("solve", "solve c_2k exactly and compare with wheel weights");
    wh_solve->add_option("--kmax", o.kmax)->check(CLI::Range(1, 4));
    wh_solve->add_option("--samples", o.samples)->check(CLI::Range(std::uint64_t{10'000}, std::uint64_t{1'000'000'000'000}));
    wh_solve->add_option("--seed", o.seed);
    wh_solve->add_flag("--no-mc", o.no_mc, "skip the Monte Carlo cross-check");
    algebra_opt(wh_solve);

    std::vector<std::string> argv_store{"kquant"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return success;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    }

    auto log_sink = log::sink();
    log::set_sink([&](log::Level level, const std::string& msg) {
        if (level == log::Level::warning) err << "warning: " << msg << "\n";
    });
    struct Restore {
        log::Sink sink;
        ~Restore() { log::set_sink(sink); }
    } restore{log_sink};

    int code = success;
    try {
        if (alg_check->parsed())
            code = run_algebra_check(s);
        else if (alg_norm->parsed())
            code = run_algebra_normalize(s, out);
        else if (inv->parsed())
            code = run_invariants(s);
        else if (g_count->parsed() || g_list->parsed())
            code = run_graphs(s, g_list->parsed());
        else if (w_mc->parsed())
            code = run_weights_mc(s);
        else if (w_table->parsed())
            code = run_weights_table(s);
        else if (w_cache->parsed())
            code = run_weights_cache(s);
        else if (s_mul->parsed())
            code = run_star_mul(s);
        else if (s_op->parsed())
            code = run_star_op(s);
        else if (s_bound->parsed())
            code = run_star_bound(s);
        else if (d_q->parsed())
            code = run_duflo(s, "qjet");
        else if (d_tau->parsed())
            code = run_duflo(s, "taujet");
        else if (d_eta->parsed())
            code = run_duflo(s, "eta");
        else if (d_verify->parsed())
            code = run_duflo(s, "verify");
        else if (kv_res->parsed())
            code = run_kv(s);
        else if (wh_solve->parsed())
            code = run_wheels(s);
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const ResourceLimit& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const CoverageError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const GraphError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const AlgebraError& e) {
        err << "invalid algebra: " << e.what() << "\n";
        return usage_error;
    } catch (const NoConstraint& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const InconsistentConstraints& e) {
        err << "verification failure: " << e.what() << "\n";
        return verification_failure;
    }
    if (code >= 0) s.rep.print(out, o.format == "machine");
    return code < 0 ? success : code;
}

inline int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace kquant::cli
