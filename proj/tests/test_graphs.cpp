#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"

using namespace kquant;

namespace {

std::set<std::string> encodings(const std::vector<AdmissibleGraph>& gs) {
    std::set<std::string> s;
    for (const auto& g : gs) s.insert(encode(g));
    return s;
}

}  // namespace

TEST(Enumerate, OrderOneHasTheTwoWedges) {
    for (GraphClass c : {GraphClass::general, GraphClass::linear}) {
        auto gs = enumerate_graphs(1, c);
        ASSERT_EQ(gs.size(), 2u);
        EXPECT_EQ(encode(gs[0]), "K1:(L,R)");
        EXPECT_EQ(encode(gs[1]), "K1:(R,L)");
    }
}

TEST(Enumerate, OrderTwoLinearHas36) {
    EXPECT_EQ(enumerate_graphs(2, GraphClass::linear).size(), 36u);
    EXPECT_EQ(count_graphs(2, GraphClass::general), 36u);
}

TEST(Enumerate, MatchesBruteForceOracle) {
    for (int n = 0; n <= 4; ++n)
        for (bool linear : {false, true}) {
            if (n == 4 && !linear) continue;
            auto gs = enumerate_graphs(n, linear ? GraphClass::linear : GraphClass::general);
            EXPECT_EQ(encodings(gs), oracle::brute_force_graphs(n, linear)) << "n=" << n;
        }
}

TEST(Enumerate, FrozenCounts) {
    EXPECT_EQ(count_graphs(0, GraphClass::linear), 1u);
    EXPECT_EQ(count_graphs(3, GraphClass::linear), 640u);
    EXPECT_EQ(count_graphs(4, GraphClass::linear), 16400u);
    EXPECT_EQ(count_graphs(3, GraphClass::general), 1728u);  // 12 ordered target pairs per vertex
}

TEST(Enumerate, SortedByEncodingAndValid) {
    for (int n = 1; n <= 3; ++n) {
        auto gs = enumerate_graphs(n, GraphClass::general);
        for (std::size_t i = 1; i < gs.size(); ++i) EXPECT_LT(encode(gs[i - 1]), encode(gs[i]));
        for (const auto& g : gs) {
            EXPECT_NO_THROW(validate(g));
            EXPECT_TRUE(in_class(g, GraphClass::general));
        }
    }
}

TEST(Enumerate, LinearIsSubsetOfGeneral) {
    for (int n = 1; n <= 4; ++n) {
        auto a = encodings(enumerate_graphs(n, GraphClass::linear));
        auto g = encodings(enumerate_graphs(n, GraphClass::general));
        EXPECT_TRUE(std::includes(g.begin(), g.end(), a.begin(), a.end())) << n;
        for (const auto& enc : a) EXPECT_TRUE(in_class(parse_graph(enc), GraphClass::linear));
    }
}

TEST(Enumerate, ClosedUnderRelabeling) {
    for (int n = 2; n <= 4; ++n) {
        auto gs = enumerate_graphs(n, GraphClass::linear);
        auto base = encodings(gs);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        while (std::next_permutation(perm.begin(), perm.end())) {
            std::set<std::string> moved;
            for (const auto& g : gs) moved.insert(encode(relabel(g, perm)));
            EXPECT_EQ(moved, base) << n;
            if (n == 4) break;  // one nontrivial permutation suffices at this size
        }
    }
}

TEST(Enumerate, LinearCountBelowBound) {
    for (int n = 1; n <= 4; ++n)
        EXPECT_LT(Rational(static_cast<unsigned long>(count_graphs(n, GraphClass::linear))), linear_count_bound(n));
    EXPECT_LT(e_lower_bound(), 2.718281828);
}

TEST(Enumerate, CeilingIsEnforced) {
    EXPECT_THROW(enumerate_graphs(6, GraphClass::linear), ResourceLimit);
    EXPECT_THROW(count_graphs(3, GraphClass::linear, 2), ResourceLimit);
    EXPECT_THROW(enumerate_graphs(1, GraphClass::wheel), GraphError);
}

TEST(Wheel, Construction) {
    AdmissibleGraph w2 = wheel(2);
    EXPECT_EQ(w2.n, 3);
    EXPECT_EQ(w2.m, 0);
    EXPECT_EQ(encode(w2), "C3:(2,3);(1,3);()");
    EXPECT_NO_THROW(validate(w2));
    AdmissibleGraph w4 = wheel(4);
    EXPECT_EQ(w4.n, 5);
    EXPECT_EQ(w4.edge_count(), 8);
    EXPECT_TRUE(w4.out[4].empty());
    EXPECT_TRUE(in_class(w4, GraphClass::wheel));
    EXPECT_THROW(wheel(1), GraphError);
}

TEST(Encoding, TwoVertexExampleRoundTrips) {
    // e_1 = (1 -> L, 1 -> 2), e_2 = (2 -> L, 2 -> R)
    AdmissibleGraph g{2, 2, {{Target::left(), Target::to_vertex(1)}, {Target::left(), Target::right()}}};
    EXPECT_EQ(encode(g), "K2:(L,2);(L,R)");
    EXPECT_EQ(parse_graph("K2:(L,2);(L,R)"), g);
}

TEST(Encoding, RoundTripOverEnumeration) {
    for (const auto& g : enumerate_graphs(3, GraphClass::general)) EXPECT_EQ(parse_graph(encode(g)), g);
    EXPECT_EQ(parse_graph("W3"), wheel(3));
    EXPECT_EQ(parse_graph(encode(wheel(3))), wheel(3));
    EXPECT_EQ(parse_graph("K0:"), (AdmissibleGraph{0, 2, {}}));
}

TEST(Encoding, InvalidGraphsAreRejected) {
    EXPECT_ANY_THROW(parse_graph("K1:(1,L)"));
    EXPECT_ANY_THROW(parse_graph("K1:(L,L)"));
    EXPECT_ANY_THROW(parse_graph("K2:(L,3);(L,R)"));
    EXPECT_ANY_THROW(parse_graph("K2:(L,R)"));
    EXPECT_ANY_THROW(parse_graph("X1:(L,R)"));
    EXPECT_ANY_THROW(parse_graph("K1:(L,R"));
    EXPECT_ANY_THROW(parse_graph("W1"));
}

TEST(Validate, IndependentOfGenerator) {
    EXPECT_THROW(validate(AdmissibleGraph{1, 2, {{Target::to_vertex(0), Target::left()}}}), GraphError);
    EXPECT_THROW(validate(AdmissibleGraph{1, 2, {{Target::right(), Target::right()}}}), GraphError);
    EXPECT_THROW(validate(AdmissibleGraph{1, 3, {{Target::left(), Target::right()}}}), GraphError);
    EXPECT_THROW(validate(AdmissibleGraph{1, 0, {{Target::left()}}}), GraphError);
    EXPECT_THROW(validate(AdmissibleGraph{2, 2, {{Target::left(), Target::right()}}}), GraphError);
}
