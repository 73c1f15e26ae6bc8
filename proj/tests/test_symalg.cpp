#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace kquant;
using oracle::bundled;

namespace {

Polynomial xvar(std::size_t d, std::size_t i) { return Polynomial::variable(d, i, Coord::x); }
Polynomial yvar(std::size_t d, std::size_t i) { return Polynomial::variable(d, i, Coord::y); }

std::vector<Polynomial> monomials_to(std::size_t d, int deg, Coord c) {
    std::vector<Polynomial> out;
    for (int k = 0; k <= deg; ++k)
        for (const auto& e : monomials_of_degree(d, k)) out.push_back(Polynomial::monomial(e, 1, c));
    return out;
}

UEnvElement gen(const LieAlgebra& L, const std::string& n) { return UEnvElement::generator(L.dim(), L.index_of(n)); }

}  // namespace

TEST(Pairing, Examples) {
    Polynomial f = yvar(2, 0) * yvar(2, 1) + Polynomial::constant(2, 7, Coord::y);
    EXPECT_EQ(pairing(Polynomial::constant(2, 1), f), 7);
    EXPECT_EQ(pairing(xvar(1, 0), yvar(1, 0)), 1);
    EXPECT_EQ(pairing(pow(xvar(1, 0), 2), pow(yvar(1, 0), 2)), 2);
}

TEST(Pairing, DiagonalWithFactorialEntries) {
    for (int k = 0; k <= 4; ++k) {
        auto monos = monomials_of_degree(3, k);
        for (const auto& a : monos)
            for (const auto& b : monos) {
                Rational v = pairing(Polynomial::monomial(a), Polynomial::monomial(b, 1, Coord::y));
                EXPECT_EQ(v, a == b ? Rational(multi_factorial(a)) : Rational(0));
            }
    }
}

TEST(Pairing, AgreesWithDerivativeOracle) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        Polynomial p = oracle::random_poly(rng, 3, 4), f = oracle::random_poly(rng, 3, 4, Coord::y);
        EXPECT_EQ(pairing(p, f), oracle::pairing_by_derivatives(p, f));
    }
}

TEST(Pairing, RejectsWrongCoordinates) {
    EXPECT_THROW(pairing(yvar(2, 0), yvar(2, 0)), CoordinateMismatch);
    EXPECT_THROW(pairing(xvar(2, 0), xvar(2, 0)), CoordinateMismatch);
}

TEST(Polynomial, ArithmeticAndDerivatives) {
    Polynomial x = xvar(2, 0), y = xvar(2, 1);
    Polynomial p = (x + y) * (x - y);
    EXPECT_EQ(p, x * x - y * y);
    EXPECT_EQ(p.derivative(0), x * 2);
    EXPECT_EQ(pow(x + y, 3).derivative(Exponents{1, 2}), Polynomial::constant(2, 6));
    EXPECT_EQ(p.degree(), 2);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ((x + Polynomial::constant(2, 1)).low_degree(), 0);
    EXPECT_EQ(format(p, {"a", "b"}), "a^2 - b^2");
}

TEST(Polynomial, MixedCoordinatesAreRejected) {
    EXPECT_THROW(xvar(2, 0) + yvar(2, 0), CoordinateMismatch);
}

TEST(RightOperator, Examples) {
    const std::size_t d = 3;
    DiffOperator my = DiffOperator::multiplication(yvar(d, 1));
    EXPECT_EQ(apply_right_operator(xvar(d, 1), my), Polynomial::constant(d, 1));
    EXPECT_TRUE(apply_right_operator(Polynomial::constant(d, 1), my).is_zero());
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        Polynomial p = oracle::random_poly(rng, d, 3);
        EXPECT_EQ(apply_right_operator(p, DiffOperator::partial(d, 2)), xvar(d, 2) * p);
    }
}

TEST(RightOperator, PairingContractForComposites) {
    const std::size_t d = 2;
    std::vector<DiffOperator> gens;
    for (std::size_t i = 0; i < d; ++i) {
        gens.push_back(DiffOperator::partial(d, i));
        gens.push_back(DiffOperator::multiplication(yvar(d, i)));
    }
    std::vector<DiffOperator> ops = gens;
    for (const auto& a : gens)
        for (const auto& b : gens) {
            ops.push_back(compose(a, b));
            for (const auto& c : gens) ops.push_back(compose(a, compose(b, c)));
        }
    ops.push_back(compose(DiffOperator::multiplication(yvar(d, 0) * yvar(d, 1)), DiffOperator::partial(d, 0)) +
                  make_rational(1, 3) * DiffOperator::identity(d));
    auto ps = monomials_to(d, 4, Coord::x), fs = monomials_to(d, 4, Coord::y);
    for (const auto& D : ops) {
        ASSERT_LE(D.order(), 3);
        for (const auto& p : ps)
            for (const auto& f : fs) EXPECT_EQ(pairing(apply_right_operator(p, D), f), pairing(p, apply(D, f)));
    }
}

TEST(RightOperator, ActsAsAntiHomomorphism) {
    const std::size_t d = 2;
    DiffOperator a = DiffOperator::partial(d, 0), b = DiffOperator::multiplication(yvar(d, 0) * yvar(d, 1));
    std::mt19937_64 rng(6);
    for (int t = 0; t < 10; ++t) {
        Polynomial p = oracle::random_poly(rng, d, 4);
        EXPECT_EQ(apply_right_operator(p, compose(a, b)), apply_right_operator(apply_right_operator(p, a), b));
    }
}

TEST(Compose, LeibnizOnFunctions) {
    const std::size_t d = 2;
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        DiffOperator a(d), b(d);
        a.add_term({1, 0}, oracle::random_poly(rng, d, 2, Coord::y));
        a.add_term({0, 2}, oracle::random_poly(rng, d, 1, Coord::y));
        b.add_term({0, 1}, oracle::random_poly(rng, d, 2, Coord::y));
        b.add_term({0, 0}, oracle::random_poly(rng, d, 2, Coord::y));
        Polynomial f = oracle::random_poly(rng, d, 4, Coord::y);
        EXPECT_EQ(apply(compose(a, b), f), apply(a, apply(b, f)));
    }
}

TEST(Jet, Examples) {
    std::mt19937_64 rng(9);
    Polynomial p = oracle::random_poly(rng, 3, 3);
    EXPECT_EQ(multiply_jet(p, {3, Polynomial::constant(3, 1, Coord::y)}), p);
    Polynomial q = Polynomial::constant(3, 1, Coord::y) + yvar(3, 0) * yvar(3, 1) * 5;
    EXPECT_EQ(multiply_jet(xvar(3, 2), {2, q}), xvar(3, 2));
    EXPECT_THROW(multiply_jet(pow(xvar(3, 0), 3), {2, q}), JetOrderError);
}

TEST(Jet, CasimirTimesQJetMatchesPairing) {
    LieAlgebra L = bundled("sl2");
    Polynomial C = parse_poly_expr("4*e*f + h^2", L);
    JetSeries q = q_jet(L, 2);
    Polynomial pq = multiply_jet(C, q);
    EXPECT_LE(pq.degree(), 2);
    for (const auto& f : monomials_to(3, 4, Coord::y)) EXPECT_EQ(pairing(pq, f), pairing(C, q.poly * f));
}

TEST(Enveloping, ProductExamples) {
    LieAlgebra sl2 = bundled("sl2");
    UEnvElement e = gen(sl2, "e"), h = gen(sl2, "h"), f = gen(sl2, "f");
    EXPECT_EQ(uea_mul(sl2, f, e), uea_mul(sl2, e, f) - h);
    EXPECT_EQ(uea_mul(sl2, e, f), UEnvElement::monomial({1, 0, 1}));
    LieAlgebra heis = bundled("heis3");
    EXPECT_EQ(uea_mul(heis, gen(heis, "y"), gen(heis, "x")), UEnvElement::monomial({1, 1, 0}) - gen(heis, "z"));
}

TEST(Enveloping, CommutatorIsBracket) {
    for (const auto& [name, text] : fixtures::algebras()) {
        LieAlgebra L = load_algebra(text);
        for (std::size_t i = 0; i < L.dim(); ++i)
            for (std::size_t j = 0; j < L.dim(); ++j) {
                UEnvElement a = UEnvElement::generator(L.dim(), i), b = UEnvElement::generator(L.dim(), j);
                UEnvElement br(L.dim());
                for (const auto& [k, v] : L.bracket(i, j)) br += v * UEnvElement::generator(L.dim(), k);
                EXPECT_EQ(uea_mul(L, a, b) - uea_mul(L, b, a), br) << name;
            }
    }
}

TEST(Enveloping, PbwAssociativityOnSl2) {
    LieAlgebra L = bundled("sl2");
    EnvelopingAlgebra U(L);
    std::vector<UEnvElement> monos;
    for (int k = 0; k <= 2; ++k)
        for (const auto& e : monomials_of_degree(3, k)) monos.push_back(UEnvElement::monomial(e));
    for (const auto& a : monos)
        for (const auto& b : monos)
            for (const auto& c : monos) EXPECT_EQ(U.mul(U.mul(a, b), c), U.mul(a, U.mul(b, c)));
}

TEST(Symmetrize, Examples) {
    LieAlgebra sl2 = bundled("sl2");
    EXPECT_EQ(symmetrize(sl2, pow(xvar(3, 0), 3)), UEnvElement::monomial({3, 0, 0}));
    EXPECT_EQ(symmetrize(sl2, xvar(3, 0) * xvar(3, 2)),
              UEnvElement::monomial({1, 0, 1}) - make_rational(1, 2) * gen(sl2, "h"));
    EXPECT_EQ(symmetrize(sl2, Polynomial::constant(3, 1)), UEnvElement::unit(3));
}

TEST(Symmetrize, AgreesWithWordAverage) {
    for (const char* name : {"sl2", "heis3", "solv2"}) {
        LieAlgebra L = bundled(name);
        for (const auto& p : monomials_to(L.dim(), 4, Coord::x))
            EXPECT_EQ(symmetrize(L, p), oracle::symmetrize_by_words(L, p)) << name << " " << format(p);
    }
}

TEST(Unsymmetrize, Examples) {
    LieAlgebra sl2 = bundled("sl2");
    EXPECT_EQ(unsymmetrize(sl2, UEnvElement::unit(3)), Polynomial::constant(3, 1));
    Polynomial ef = unsymmetrize(sl2, UEnvElement::monomial({1, 0, 1}));
    EXPECT_EQ(ef, xvar(3, 0) * xvar(3, 2) + xvar(3, 1) * make_rational(1, 2));
}

TEST(Unsymmetrize, ExhaustiveRoundTripThroughDegreeFour) {
    LieAlgebra L = bundled("sl2");
    EnvelopingAlgebra U(L);
    for (int k = 0; k <= 4; ++k)
        for (const auto& e : monomials_of_degree(3, k)) {
            Polynomial p = Polynomial::monomial(e);
            EXPECT_EQ(U.unsymmetrize(U.symmetrize(p)), p);
            UEnvElement u = UEnvElement::monomial(e);
            EXPECT_EQ(U.symmetrize(U.unsymmetrize(u)), u);
            EXPECT_EQ(U.symmetrize(p).degree(), k);
        }
    std::mt19937_64 rng(10);
    for (int t = 0; t < 20; ++t) {
        Polynomial p = oracle::random_poly(rng, 3, 4);
        EXPECT_EQ(U.unsymmetrize(U.symmetrize(p)), p);
    }
}

class EnvelopingMap : public ::testing::Test {
protected:
    LieAlgebra L = bundled("sl2");
    StarContext ctx{L, bundled_weight_table(), 2};
};

TEST_F(EnvelopingMap, Examples) {
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(i_alg(UEnvElement::generator(3, i), ctx), xvar(3, i));
        EXPECT_EQ(kappa(xvar(3, i), ctx), UEnvElement::generator(3, i));
    }
    EXPECT_EQ(i_alg(UEnvElement::unit(3), ctx), Polynomial::constant(3, 1));
    Polynomial efstar = star(xvar(3, 0), xvar(3, 2), ctx);
    EXPECT_EQ(i_alg(UEnvElement::monomial({1, 0, 1}), ctx), efstar);
    EXPECT_EQ(kappa(efstar, ctx), UEnvElement::monomial({1, 0, 1}));
}

TEST_F(EnvelopingMap, RoundTripOnRandomElements) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < 10; ++t) {
        UEnvElement u(3);
        for (int k = 0; k <= 3; ++k)
            for (const auto& e : monomials_of_degree(3, k))
                if (coef(rng) > 1) u.add_term(e, coef(rng));
        Polynomial p = i_alg(u, ctx, true);
        EXPECT_EQ(kappa(p, ctx, true), u);
        // Top symbol triangularity.
        if (!u.is_zero()) {
            Polynomial top = u.symbol().homogeneous_component(u.degree());
            Polynomial rest = p - top;
            EXPECT_LT(rest.degree(), u.degree());
        }
    }
}

TEST(Expression, Grammar) {
    LieAlgebra L = bundled("sl2");
    EXPECT_EQ(parse_poly_expr("4*e*f + h^2", L), xvar(3, 0) * xvar(3, 2) * 4 + xvar(3, 1) * xvar(3, 1));
    EXPECT_EQ(parse_poly_expr("1", L), Polynomial::constant(3, 1));
    EXPECT_EQ(parse_poly_expr(" - 3/2 * e ^ 2 + f", L), pow(xvar(3, 0), 2) * make_rational(-3, 2) + xvar(3, 2));
    EXPECT_EQ(parse_poly_expr("e - e", L), Polynomial(3));
    EXPECT_THROW(parse_poly_expr("e^-1", L), ParseError);
    EXPECT_THROW(parse_poly_expr("q", L), ParseError);
    EXPECT_THROW(parse_poly_expr("1/0*e", L), ParseError);
    EXPECT_THROW(parse_poly_expr("2/-3", L), ParseError);
    EXPECT_THROW(parse_poly_expr("e +", L), ParseError);
}
