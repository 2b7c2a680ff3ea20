#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "dolgachev/families/dataset.hpp"
#include "dolgachev/lift/hensel.hpp"
#include "dolgachev/recog/recognize.hpp"

using namespace dolgachev;

namespace {

Poly<QI7> upoly(const std::string& text, const std::string& var = "x") {
    return parse_poly(text, make_ring({var}));
}

Integer P(std::uint64_t p, unsigned K) { return ipow(from_u64(p), K); }

}  // namespace

TEST(Hensel, SquareRootOfTwoMod49) {
    auto r = hensel_univariate(upoly("x^2 - 2"), 3, 7, 2);
    EXPECT_EQ(r.root.value(), 10);
    // oracle: brute force over residues mod 49 congruent to 3 mod 7
    for (Integer t = 0; t < 7; ++t) {
        Integer c = 3 + 7 * t;
        if (mod(c * c - 2, Integer(49)) == 0) {
            EXPECT_EQ(c, 10);
        }
    }
}

TEST(Hensel, LinearAndErrors) {
    for (unsigned K : {1u, 5u, 30u}) EXPECT_EQ(hensel_univariate(upoly("x - 5"), 5, 11, K).root.value(), 5);
    EXPECT_THROW(hensel_univariate(upoly("(x - 1)^2*(x + 1)"), 1, 7, 4), SingularRoot);
    EXPECT_THROW(hensel_univariate(upoly("x^2 - 2"), 2, 7, 4), NotOnScheme);
}

TEST(Hensel, DegreeTwelveTo101) {
    auto f = Manifest::load().document("S2MINPOLY").get("minpoly");
    auto r = hensel_univariate(f, 14, 79, 101);
    EXPECT_LE(r.steps, 8u);
    ModPoly F(f, 79, 101, Branch::plus);
    EXPECT_EQ(F({r.root.value()}, P(79, 101)), 0);
    // lift-then-reduce equals the shorter lift
    for (unsigned K : {1u, 2u, 17u, 50u})
        EXPECT_EQ(r.root.reduce(K), hensel_univariate(f, 14, 79, K).root);
    EXPECT_THROW(hensel_univariate(f, 14, 79, 0), std::invalid_argument);
}

TEST(Hensel, SystemMatchesUnivariate) {
    RingPtr R = make_ring({"x", "y"});
    LiftProblem pr;
    pr.system = {parse_poly("x^2 + 7", R), parse_poly("y - x", R)};
    pr.start = {25, 25};
    pr.p = 79;
    pr.K = 3;
    auto s = hensel_system(pr);
    auto u = hensel_univariate(upoly("x^2 + 7"), 25, 79, 3);
    EXPECT_EQ(s.solution[0], u.root);
    EXPECT_EQ(s.solution[1], u.root);
    EXPECT_TRUE(s.certificate.residual_zero);
    EXPECT_EQ(s.certificate.problem_hash, pr.hash());
}

TEST(Hensel, LinearSystemExact) {
    RingPtr R = make_ring({"x", "y", "z"});
    LiftProblem pr;
    // x = 3, y = -2 (z free, held at its start value)
    pr.system = {parse_poly("x + y - 1", R), parse_poly("x - y - 5", R)};
    pr.start = {3, 11, 4};
    pr.p = 13;
    pr.K = 20;
    auto s = hensel_system(pr);
    EXPECT_EQ(s.pivots, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(s.solution[0].value(), 3);
    EXPECT_EQ(s.solution[1].value(), P(13, 20) - 2);
    EXPECT_EQ(s.solution[2].value(), 4);
}

TEST(Hensel, UnderdeterminedAndRankDeficient) {
    RingPtr R = make_ring({"x", "y"});
    LiftProblem pr;
    pr.system = {parse_poly("x^2 + y^2 - 2", R)};
    pr.start = {1, 1};
    pr.p = 31;
    pr.K = 12;
    auto s = hensel_system(pr);
    EXPECT_EQ(s.pivots, std::vector<std::size_t>{0});
    EXPECT_EQ(s.solution[1].value(), 1);
    Integer N = P(31, 12);
    EXPECT_EQ(mod(s.solution[0].value() * s.solution[0].value() - 1, N), 0);
    pr.pivots = std::vector<std::size_t>{1};
    EXPECT_EQ(hensel_system(pr).solution[0].value(), 1);

    LiftProblem bad;
    bad.system = {parse_poly("x^2 - y^2", R)};
    bad.start = {0, 0};
    bad.p = 31;
    bad.K = 4;
    EXPECT_THROW(hensel_system(bad), RankDeficient);
    bad.start = {1, 2};
    EXPECT_THROW(hensel_system(bad), NotOnScheme);
}

TEST(Hensel, LiftThenReduceProperty) {
    std::mt19937_64 rng(11);
    RingPtr R = make_ring({"x", "y"});
    for (int trial = 0; trial < 10; ++trial) {
        std::uint64_t p = 101;
        std::uint64_t a = rng() % p, b = rng() % p;
        // curve through (a, b): x^3 + c y - (a^3 + c b) with c != 0
        std::uint64_t c = 1 + rng() % (p - 1);
        std::string text = "x^3 + " + std::to_string(c) + "*y*x + y^2 - " +
                           std::to_string((a * a % p * a + c * b % p * a + b * b) % p);
        LiftProblem pr;
        pr.system = {parse_poly(text, R)};
        pr.start = {a, b};
        pr.p = p;
        pr.K = 9;
        try {
            auto hi = hensel_system(pr);
            pr.K = 4;
            auto lo = hensel_system(pr);
            for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(hi.solution[i].reduce(4), lo.solution[i]);
        } catch (const RankDeficient&) {
        }
    }
}

TEST(Recog, SimpleRelations) {
    auto five = minpoly_from_padic(PadicApprox(5, 79, 10), 3, Integer(1000));
    EXPECT_EQ(five.poly, (IntPoly{-5, 1}));
    auto r = hensel_univariate(upoly("x^2 + 7"), 25, 79, 12);
    EXPECT_EQ(minpoly_from_padic(r.root, 2, Integer(1000)).poly, (IntPoly{7, 0, 1}));
    EXPECT_THROW(minpoly_from_padic(PadicApprox(123456789, 79, 4), 1, Integer(10)), NoRelation);
}

TEST(Recog, LatticeOracles) {
    IntLattice id{{{1, 0}, {0, 1}}};
    EXPECT_EQ(lll_reduce(id).reduced.basis, id.basis);
    IntLattice L{{{1, 0}, {4, 1}}};
    auto red = lll_reduce(L);
    EXPECT_LE(dot(red.reduced.basis[0], red.reduced.basis[0]), 1);
    EXPECT_EQ(abs(int_det(red.transform)), 1);
}

TEST(Recog, DegreeTwelveRecovery) {
    auto f = Manifest::load().document("S2MINPOLY").get("minpoly");
    auto t0 = std::chrono::steady_clock::now();
    auto r = hensel_univariate(f, 14, 79, 101);
    auto g = minpoly_from_padic(r.root, 12, Integer(1) << 40);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ASSERT_EQ(g.poly.size(), 13u);
    EXPECT_EQ(g.poly[0], 1048576);
    EXPECT_EQ(g.poly[12], 12492403);
    for (std::size_t i = 0; i <= 12; ++i) EXPECT_EQ(QuadElem(Rational(g.poly[i])), f.coeff(Monomial::var(0, static_cast<unsigned>(i))));
    EXPECT_LT(secs, 10);
}

TEST(Recog, QuadraticExamples) {
    EXPECT_EQ(recognize_quadratic(PadicApprox(7, 79, 8), Branch::plus, Integer(1000)).value, QuadElem(7L));
    QuadElem half(Rational(1, 2), Rational(1, 2));
    auto x = embed_quad(half, 79, 8, Branch::plus);
    EXPECT_EQ(recognize_quadratic(x, Branch::plus, Integer(1000)).value, half);
    QuadElem q(Rational(-63, 32), Rational(259, 32));
    for (Branch br : {Branch::plus, Branch::minus})
        EXPECT_EQ(recognize_quadratic(embed_quad(q, 79, 8, br), br, Integer(1000)).value, q);
}

TEST(Recog, QuadraticRoundTripProperty) {
    // (A + B w)/C with max(|A|, |B|, |C|) <= 10^6
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    const Integer H(1000000);
    for (int i = 0; i < 200; ++i) {
        long c = den(rng);
        if (c % 79 == 0) c += 1;
        QuadElem q(make_rational(num(rng), c), make_rational(num(rng), c));
        for (Branch br : {Branch::plus, Branch::minus}) {
            auto x = embed_quad(q, 79, 25, br);
            EXPECT_EQ(recognize_quadratic(x, br, H).value, q);
        }
    }
}
