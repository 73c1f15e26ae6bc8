#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kquant/cli.hpp"

using namespace kquant;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    args.insert(args.begin(), "--no-cache");
    int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

Outcome run_with_cache(const std::string& cache, std::vector<std::string> args) {
    std::ostringstream out, err;
    args.insert(args.begin(), {"--cache", cache});
    int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (l == line) return true;
    return false;
}

std::filesystem::path temp_file(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove(p);
    return p;
}

}  // namespace

TEST(Cli, GraphCount) {
    Outcome r = run({"graphs", "count", "--n", "2", "--class", "A"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has_line(r.out, "count: 36")) << r.out;
    r = run({"--format", "machine", "graphs", "count", "--n", "3"});
    EXPECT_TRUE(has_line(r.out, "COUNT\t640")) << r.out;
}

TEST(Cli, GraphList) {
    Outcome r = run({"--format", "machine", "graphs", "list", "--n", "1", "--class", "G"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has_line(r.out, "GRAPH\tK1:(L,R)"));
    EXPECT_TRUE(has_line(r.out, "GRAPH\tK1:(R,L)"));
}

TEST(Cli, DufloVerifyCasimir) {
    Outcome r = run({"duflo", "verify", "--algebra", "sl2", "--p", "4*e*f+h^2", "--q", "4*e*f+h^2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(has_line(r.out, "residual: 0")) << r.out;
    EXPECT_TRUE(has_line(r.out, "algebra: sl2"));
    EXPECT_TRUE(has_line(r.out, "scale: 1"));
}

TEST(Cli, DufloVerifyNonInvariantWarnsButSucceeds) {
    Outcome r = run({"duflo", "verify", "--p", "e", "--q", "f"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
    EXPECT_FALSE(has_line(r.out, "residual: 0"));
}

TEST(Cli, StarMulAndCeiling) {
    Outcome r = run({"star", "mul", "--f", "e", "--g", "f"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has_line(r.out, "product: e*f + 1/2*h - 1/6")) << r.out;
    EXPECT_TRUE(has_line(r.out, "table: bundled exact n<=2 table"));
    r = run({"star", "mul", "--n", "99", "--f", "e", "--g", "f"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ceiling"), std::string::npos);
    r = run({"star", "mul", "--n", "3", "--f", "e", "--g", "f"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, StarOpAndBound) {
    Outcome r = run({"star", "op", "--p", "e*f", "--cap", "3"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(has_line(r.out, "defining identity on monomials: holds"));
    r = run({"star", "bound", "--p", "h^2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has_line(r.out, "bound: holds"));
}

TEST(Cli, KvAndWheels) {
    Outcome r = run({"kv", "residual", "--r", "4*e*f+h^2", "--p", "4*e*f+h^2", "--depth", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(has_line(r.out, "residual: 0"));
    r = run({"wheels", "solve", "--no-mc"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has_line(r.out, "c_2: 0"));
    r = run({"wheels", "solve", "--no-mc", "--algebra", "heis3"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, WheelsWithMonteCarloNamesSeedAndSamples) {
    Outcome r = run({"wheels", "solve", "--samples", "100000", "--seed", "7"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("100000 samples, seed 7"), std::string::npos) << r.out;
}

TEST(Cli, InvariantsAndAlgebra) {
    Outcome r = run({"invariants", "--algebra", "sl2", "--degree", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has_line(r.out, "count: 2"));
    EXPECT_TRUE(has_line(r.out, "invariant 2: 4*e*f + h^2")) << r.out;
    r = run({"algebra", "normalize", "--algebra", "heis3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has_line(r.out, "scale: 2"));
    EXPECT_NE(r.out.find("bracket x y -> 2 z"), std::string::npos) << r.out;
}

TEST(Cli, AlgebraCheckOnFiles) {
    auto good = temp_file("kquant-good.alg"), bad = temp_file("kquant-bad.alg");
    std::ofstream(good) << "algebra s\ndim 2\nbasis x y\nbracket x y -> 1 y\n";
    std::ofstream(bad) << "algebra b\ndim 3\nbasis a b c\nbracket a b -> 1 c\nbracket b c -> 1 b\n";
    Outcome r = run({"algebra", "check", "--algebra", good.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has_line(r.out, "valid: yes"));
    r = run({"algebra", "check", "--algebra", bad.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(has_line(r.out, "valid: no"));
    std::filesystem::remove(good);
    std::filesystem::remove(bad);
    EXPECT_EQ(run({"algebra", "check", "--algebra", "/nonexistent/x.alg"}).code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"graphs", "count", "--n", "2", "--bogus", "1"}).code, 2);
    EXPECT_EQ(run({"graphs", "count"}).code, 2);
    EXPECT_EQ(run({"graphs", "count", "--n", "2", "--class", "Z"}).code, 2);
    EXPECT_EQ(run({"star", "mul", "--f", "e^-1", "--g", "f"}).code, 2);
    EXPECT_EQ(run({"star", "mul", "--f", "q", "--g", "f"}).code, 2);
    Outcome r = run({"--format", "xml", "graphs", "count", "--n", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--format"), std::string::npos);
}

TEST(Cli, WeightsMcIsCachedAndDeterministic) {
    auto cache = temp_file("kquant-cli-test.cache");
    std::vector<std::string> args{"--format", "machine", "weights", "mc", "--graph", "K1:(L,R)", "--samples", "20000",
                                  "--seed", "3"};
    Outcome a = run_with_cache(cache.string(), args);
    EXPECT_EQ(a.code, 0);
    EXPECT_TRUE(has_line(a.out, "SEED\t3"));
    EXPECT_TRUE(has_line(a.out, "SAMPLES\t20000"));
    ASSERT_TRUE(std::filesystem::exists(cache));
    Outcome b = run({"--format", "machine", "--workers", "3", "weights", "mc", "--graph", "K1:(L,R)", "--samples",
                 "20000", "--seed", "3"});
    EXPECT_EQ(a.out, b.out);
    Outcome listing = run_with_cache(cache.string(), {"weights", "cache"});
    EXPECT_TRUE(has_line(listing.out, "mc entries: 1")) << listing.out;
    std::filesystem::remove(cache);
    Outcome mismatch = run({"weights", "mc", "--graph", "K1:(L)", "--samples", "10000"});
    EXPECT_EQ(mismatch.code, 0);
    EXPECT_TRUE(has_line(mismatch.out, "mean: 0"));
}

TEST(Cli, ExpressionParserExamples) {
    LieAlgebra L = load_algebra(fixtures::algebras().at("sl2"));
    EXPECT_TRUE(is_invariant(L, parse_poly_expr("4*e*f + h^2", L)));
    EXPECT_EQ(parse_poly_expr("1", L), Polynomial::constant(3, 1));
    EXPECT_THROW(parse_poly_expr("e^-1", L), ParseError);
}
