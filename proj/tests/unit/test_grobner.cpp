#include <gtest/gtest.h>

#include <random>

#include "dolgachev/grobner/hilbert.hpp"
#include "dolgachev/grobner/linalg.hpp"
#include "dolgachev/grobner/solve.hpp"
#include "dolgachev/grobner/upoly.hpp"
#include "dolgachev/poly/ops.hpp"
#include "dolgachev/poly/text.hpp"

using namespace dolgachev;

namespace {

std::vector<Poly<Fp>> fp_system(const std::vector<std::string>& src, const RingPtr& R, std::uint64_t p) {
    Fp F(p);
    std::vector<Poly<Fp>> out;
    for (auto& s : src) out.push_back(reduce_mod_p(parse_poly(s, R), F, Branch::plus));
    return out;
}

std::vector<Poly<QI7>> qq_system(const std::vector<std::string>& src, const RingPtr& R) {
    std::vector<Poly<QI7>> out;
    for (auto& s : src) out.push_back(parse_poly(s, R));
    return out;
}

Poly<Fp> random_form(std::mt19937_64& rng, const RingPtr& R, const Fp& F, unsigned deg) {
    std::vector<Term<Fp>> ts;
    const std::size_t n = R->nvars();
    std::function<void(std::size_t, unsigned, Monomial)> rec = [&](std::size_t v, unsigned left, Monomial m) {
        if (v + 1 == n) {
            m.e[v] = static_cast<std::uint8_t>(left);
            m.deg = static_cast<std::uint16_t>(deg);
            ts.push_back({m, rng() % F.p});
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            m.e[v] = static_cast<std::uint8_t>(k);
            rec(v + 1, left - k, m);
        }
    };
    rec(0, deg, Monomial{});
    return Poly<Fp>::from_terms(R, F, ts);
}

// Coefficients of prod (1 - t^d_i) / (1 - t)^n up to degree D.
std::vector<long> ci_series(const std::vector<unsigned>& degs, std::size_t n, unsigned D) {
    std::vector<long> num(D + 1, 0);
    num[0] = 1;
    for (unsigned d : degs)
        for (unsigned k = D; k >= d; --k) {
            num[k] -= num[k - d];
            if (k == d) break;
        }
    std::vector<long> s = num;
    for (std::size_t i = 0; i < n; ++i)
        for (unsigned k = 1; k <= D; ++k) s[k] += s[k - 1];
    return s;
}

}  // namespace

TEST(Buchberger, CoordinateIdeal) {
    auto R = make_ring({"x", "y"});
    auto G = buchberger(qq_system({"x", "y"}, R));
    ASSERT_EQ(G.gens.size(), 2u);
    EXPECT_EQ(G.gens[0], parse_poly("y", R));
    EXPECT_EQ(G.gens[1], parse_poly("x", R));
}

TEST(Buchberger, TwistedCubicLex) {
    auto R = make_ring({"x", "y", "z"}, TermOrder::lex());
    auto G = buchberger(qq_system({"x*z - y^2", "x^3 - z^2", "y^3 - x*z*y"}, R));
    // every input is in the ideal and every basis element reduces the S-polynomials to zero
    for (auto& s : std::vector<std::string>{"x*z - y^2", "x^3 - z^2"}) EXPECT_TRUE(ideal_contains(G, parse_poly(s, R)));
    for (auto& g : G.gens) EXPECT_EQ(g.lc(), QuadElem(1));
    // lex basis contains an element free of x
    bool elim = false;
    for (auto& g : G.gens)
        if (g.degree_in(0) == 0) elim = true;
    EXPECT_TRUE(elim);
}

TEST(Buchberger, NormalFormExample) {
    auto R = make_ring({"x", "y"}, TermOrder::lex());
    auto G = buchberger(qq_system({"x - y"}, R));
    EXPECT_EQ(normal_form(parse_poly("x^2", R), G), parse_poly("y^2", R));
}

TEST(Buchberger, UnitIdealAndQuadraticCoefficients) {
    auto R = make_ring({"x", "y"});
    auto G = buchberger(qq_system({"x*y - 1", "x", "y^2 + I7"}, R));
    EXPECT_TRUE(G.is_unit());
    auto H = buchberger(qq_system({"x^2 + 7", "y - x"}, R));
    EXPECT_TRUE(ideal_contains(H, parse_poly("(x - I7)*(x + I7)", R)));
    EXPECT_FALSE(ideal_contains(H, parse_poly("x - I7", R)));
}

TEST(Buchberger, BudgetIsResumable) {
    auto R = make_ring({"x", "y", "z"});
    auto sys = fp_system({"x^2*y - z^2 + 1", "x*y^2 - x*z + 2", "x*y*z - y^2 + 3"}, R, 101);
    BuchbergerRun<Fp> run(sys, R);
    Budget tiny;
    tiny.max_reductions = 1;
    int rounds = 0;
    while (!run.step(tiny)) ++rounds;
    EXPECT_GT(rounds, 0);
    auto G1 = run.result();
    auto G2 = buchberger(sys, R);
    ASSERT_EQ(G1.gens.size(), G2.gens.size());
    for (std::size_t i = 0; i < G1.gens.size(); ++i) EXPECT_EQ(G1.gens[i], G2.gens[i]);
    EXPECT_THROW(buchberger(sys, R, tiny), BudgetExceeded);
}

TEST(Buchberger, BasisPropertyRandom) {
    // Reduced basis: S-polynomials reduce to zero and no lead divides another term.
    std::mt19937_64 rng(3);
    Fp F(32003);
    auto R = make_ring({"a", "b", "c"});
    for (int it = 0; it < 10; ++it) {
        std::vector<Poly<Fp>> sys{random_form(rng, R, F, 2), random_form(rng, R, F, 2), random_form(rng, R, F, 3)};
        auto G = buchberger(sys, R);
        for (auto& f : sys) EXPECT_TRUE(ideal_contains(G, f));
        for (std::size_t i = 0; i < G.gens.size(); ++i)
            for (std::size_t j = 0; j < G.gens.size(); ++j) {
                if (i == j) continue;
                for (auto& t : G.gens[j].terms()) EXPECT_FALSE(G.gens[i].lm().divides(t.m));
                auto l = G.gens[i].lm().lcm(G.gens[j].lm());
                auto s = G.gens[i].mul_term(G.gens[i].lm().quotient_of(l), 1) -
                         G.gens[j].mul_term(G.gens[j].lm().quotient_of(l), 1);
                EXPECT_TRUE(normal_form(s, G).is_zero());
            }
    }
}

TEST(Hilbert, HyperplaneInThreeVariables) {
    auto R = make_ring({"x", "y", "z"});
    auto H = hilbert_function(fp_system({"x"}, R, 7), {}, 10);
    for (unsigned d = 0; d <= 10; ++d) EXPECT_EQ(H[d], long(d + 1));
    auto P = hilbert_polynomial(H);
    EXPECT_EQ(P.str(), "T + 1");
}

TEST(Hilbert, TwoPoints) {
    auto R = make_ring({"x", "y", "z"});
    // points (1:0:0) and (0:1:0)
    auto H = hilbert_function(fp_system({"z", "x*y"}, R, 101), {}, 8);
    EXPECT_EQ(H[0], 1);
    for (unsigned d = 1; d <= 8; ++d) EXPECT_EQ(H[d], 2);
    auto P = hilbert_polynomial(H);
    EXPECT_EQ(P.str(), "2");
    EXPECT_EQ(P.from_degree, 1u);
}

TEST(Hilbert, CompleteIntersectionProductFormula) {
    std::mt19937_64 rng(2024);
    Fp F(32003);
    for (int it = 0; it < 20; ++it) {
        std::size_t n = 3 + rng() % 2;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
        auto R = make_ring(names);
        std::size_t r = 1 + rng() % (n - 1);
        std::vector<unsigned> degs;
        std::vector<Poly<Fp>> sys;
        for (std::size_t k = 0; k < r; ++k) {
            degs.push_back(1 + static_cast<unsigned>(rng() % 3));
            sys.push_back(random_form(rng, R, F, degs.back()));
        }
        const unsigned D = 9;
        auto H = hilbert_function(sys, {}, D);
        auto expect = ci_series(degs, n, D);
        for (unsigned d = 0; d <= D; ++d) EXPECT_EQ(H[d], expect[d]) << "case " << it << " degree " << d;
    }
}

TEST(Hilbert, WeightedAndErrors) {
    auto R = make_ring({"u0", "u1"});
    // weights 2,3: u0^3 - u1^2 homogeneous of degree 6
    auto sys = fp_system({"u0^3 - u1^2"}, R, 101);
    auto H = hilbert_function(sys, {2, 3}, 20);
    // oracle: count (a,b) with 2a+3b=d, minus those shifted by 6
    for (unsigned d = 0; d <= 20; ++d) {
        long c = 0;
        for (unsigned a = 0; 2 * a <= d; ++a)
            if ((d - 2 * a) % 3 == 0) ++c;
        if (d >= 6) {
            unsigned e = d - 6;
            for (unsigned a = 0; 2 * a <= e; ++a)
                if ((e - 2 * a) % 3 == 0) --c;
        }
        EXPECT_EQ(H[d], c) << d;
    }
    EXPECT_THROW(hilbert_function(fp_system({"u0 + u1"}, R, 101), {2, 3}, 5), NotHomogeneous);
    EXPECT_THROW(hilbert_polynomial({1, 3, 6}), Unstabilized);
}

TEST(Hilbert, KrullDimension) {
    auto R = make_ring({"x", "y", "z", "w"});
    EXPECT_EQ(krull_dimension(buchberger(fp_system({"x", "y"}, R, 7))), 2);
    EXPECT_EQ(krull_dimension(buchberger(fp_system({"x*y", "z"}, R, 7))), 2);
    EXPECT_EQ(krull_dimension(buchberger(fp_system({"x*z - y^2", "y*w - z^2", "x*w - y*z"}, R, 7))), 2);
}

TEST(Linalg, CharpolyMatchesDeterminantOracle) {
    std::mt19937_64 rng(9);
    Fp F(97);
    UPolyRing<Fp> U(F);
    for (int it = 0; it < 30; ++it) {
        std::size_t n = 1 + rng() % 6;
        Matrix<Fp> A = zero_matrix(F, n, n);
        for (auto& row : A)
            for (auto& v : row) v = rng() % 4 == 0 ? 0 : rng() % 97;
        auto cp = charpoly(F, A);
        ASSERT_EQ(cp.size(), n + 1);
        for (std::uint64_t x = 0; x < 97; x += 7) {
            Matrix<Fp> B = A;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) B[i][j] = F.sub(i == j ? x : 0, A[i][j]);
            EXPECT_EQ(U.eval(cp, x), determinant(F, B));
        }
    }
}

TEST(Linalg, KernelInverseSolve) {
    std::mt19937_64 rng(4);
    Fp F(101);
    for (int it = 0; it < 30; ++it) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        Matrix<Fp> A = zero_matrix(F, r, c);
        for (auto& row : A)
            for (auto& v : row) v = rng() % 3 == 0 ? 0 : rng() % 101;
        auto K = kernel(F, A, c);
        EXPECT_EQ(K.size() + rank(F, A), c);
        for (auto& v : K) {
            Matrix<Fp> col = transpose<Fp>({v});
            for (auto& row : mat_mul(F, A, col)) EXPECT_EQ(row[0], 0u);
        }
        if (r == c) {
            auto inv = inverse(F, A);
            EXPECT_EQ(inv.has_value(), determinant(F, A) != 0);
            if (inv) {
                EXPECT_EQ(mat_mul(F, A, *inv), identity_matrix(F, r));
            }
        }
    }
}

TEST(UPoly, FactorMatchesBruteForceRoots) {
    std::mt19937_64 rng(8);
    for (std::uint64_t p : {2ULL, 3ULL, 7ULL, 13ULL}) {
        Fp F(p);
        UPolyRing<Fp> U(F);
        for (int it = 0; it < 40; ++it) {
            std::size_t deg = 1 + rng() % 8;
            std::vector<std::uint64_t> f(deg + 1);
            for (auto& c : f) c = rng() % p;
            f.back() = 1;
            auto fac = U.factor(f, rng());
            // product reconstructs f
            std::vector<std::uint64_t> prod{1};
            for (auto& [g, m] : fac)
                for (unsigned k = 0; k < m; ++k) prod = U.mul(prod, g);
            EXPECT_EQ(prod, f);
            // root multiplicities agree with brute force
            for (std::uint64_t x = 0; x < p; ++x) {
                unsigned mult = 0;
                auto h = f;
                for (;;) {
                    auto [q, r] = U.divmod(h, {F.neg(x), 1});
                    if (!r.empty()) break;
                    ++mult;
                    h = q;
                }
                unsigned got = 0;
                for (auto& [r, m] : U.roots(f, 1))
                    if (r == x) got = m;
                EXPECT_EQ(got, mult) << "p=" << p << " x=" << x;
            }
            // irreducibility of each factor: no factor of degree <= 3 has a proper divisor of lower degree
            for (auto& [g, m] : fac)
                if (g.size() <= 4) {
                    for (std::uint64_t x = 0; x < p && g.size() > 2; ++x) EXPECT_NE(U.eval(g, x), 0u);
                }
        }
    }
}

TEST(UPoly, FactorOverFp2) {
    Fp2 F2(7);
    UPolyRing<Fp2> U(F2);
    // x^2 + 1 has no roots in F_7 but splits in F_49
    std::vector<Fp2Elem> f{F2.one(), F2.zero(), F2.one()};
    auto r = U.roots(f, 3);
    ASSERT_EQ(r.size(), 2u);
    for (auto& [x, m] : r) EXPECT_TRUE(F2.is_zero(U.eval(f, x)));
}

TEST(Solve, RationalPoints) {
    auto R = make_ring({"x", "y"});
    auto sol = solve_zero_dim(fp_system({"x^2 - 1", "y - x"}, R, 7));
    ASSERT_EQ(sol.rational.size(), 2u);
    EXPECT_EQ(sol.rational[0].coords, (std::vector<std::uint64_t>{1, 1}));
    EXPECT_EQ(sol.rational[1].coords, (std::vector<std::uint64_t>{6, 6}));
    EXPECT_EQ(sol.quotient_dim, 2u);
}

TEST(Solve, QuadraticPointsAndMultiplicity) {
    auto R = make_ring({"x"});
    auto sol = solve_zero_dim(fp_system({"x^2 + 1"}, R, 7));
    EXPECT_TRUE(sol.rational.empty());
    ASSERT_EQ(sol.quadratic.size(), 2u);
    Fp2 F2(7);
    for (auto& pt : sol.quadratic) EXPECT_EQ(F2.add(F2.mul(pt.coords[0], pt.coords[0]), F2.one()), F2.zero());
    auto R2 = make_ring({"x", "y"});
    auto dbl = solve_zero_dim(fp_system({"x^2", "y - 3"}, R2, 7));
    ASSERT_EQ(dbl.rational.size(), 1u);
    EXPECT_EQ(dbl.rational[0].multiplicity, 2u);
    EXPECT_EQ(dbl.rational[0].coords, (std::vector<std::uint64_t>{0, 3}));
    EXPECT_THROW(solve_zero_dim(fp_system({"x*y"}, R2, 7)), NotZeroDim);
    EXPECT_EQ(solve_zero_dim(fp_system({"x", "x - 1"}, R2, 7)).point_count(), 0u);
}

TEST(Solve, RandomPointSetsRecovered) {
    // Oracle: the ideal of a known point set, built as products of linear forms.
    std::mt19937_64 rng(21);
    const std::uint64_t p = 31;
    Fp F(p);
    auto R = make_ring({"x", "y", "z"});
    for (int it = 0; it < 10; ++it) {
        std::set<std::vector<std::uint64_t>> pts;
        std::size_t k = 1 + rng() % 5;
        while (pts.size() < k) pts.insert({rng() % p, rng() % p, rng() % p});
        // interpolation: generators are products over points of (x_i - a_i) plus coordinate lifts
        std::vector<Poly<Fp>> sys;
        for (std::size_t v = 0; v < 3; ++v) {
            auto f = Poly<Fp>::constant(R, F, 1);
            std::set<std::uint64_t> vals;
            for (auto& q : pts) vals.insert(q[v]);
            for (auto a : vals) f *= Poly<Fp>::variable(R, F, v) - Poly<Fp>::constant(R, F, a);
            sys.push_back(f);
        }
        // cut the grid down to the point set with products of separating linear forms
        std::vector<std::vector<std::uint64_t>> grid;
        std::set<std::uint64_t> xs, ys, zs;
        for (auto& q : pts) xs.insert(q[0]), ys.insert(q[1]), zs.insert(q[2]);
        for (auto a : xs)
            for (auto b : ys)
                for (auto c : zs)
                    if (!pts.count({a, b, c})) {
                        // a polynomial vanishing on pts but not at (a,b,c): product of linear forms through each point
                        auto f = Poly<Fp>::constant(R, F, 1);
                        for (auto& q : pts) {
                            std::size_t v = q[0] != a ? 0 : (q[1] != b ? 1 : 2);
                            f *= Poly<Fp>::variable(R, F, v) - Poly<Fp>::constant(R, F, q[v]);
                        }
                        sys.push_back(f);
                    }
        auto sol = solve_zero_dim(sys);
        std::set<std::vector<std::uint64_t>> got;
        for (auto& q : sol.rational) got.insert(q.coords);
        EXPECT_EQ(got, pts);
        EXPECT_TRUE(sol.quadratic.empty());
    }
}

TEST(Solve, ProjectiveCharts) {
    auto R = make_ring({"x", "y", "z"});
    // conic x^2 + y^2 - z^2 meets line z = 0 in the points with x^2 = -y^2
    auto sol = solve_projective(fp_system({"x^2 + y^2 - z^2", "z"}, R, 13));
    ASSERT_EQ(sol.rational.size(), 2u);  // -1 is a square mod 13
    for (auto& q : sol.rational) {
        EXPECT_EQ(q.coords[0], 1u);
        EXPECT_EQ(q.coords[2], 0u);
        EXPECT_EQ((1 + q.coords[1] * q.coords[1]) % 13, 0u);
    }
    auto tangent = solve_projective(fp_system({"x^2 + y^2 - z^2", "x - z"}, R, 13));
    ASSERT_EQ(tangent.rational.size(), 1u);
    EXPECT_EQ(tangent.rational[0].multiplicity, 2u);
}

TEST(Solve, ProjectiveHigherDegreeCountedOnce) {
    auto R = make_ring({"x", "y", "z"});
    // 2 and 4 are not cubes mod 7: one closed point of degree 3, seen from charts y = 1 and z = 1
    auto sol = solve_projective(fp_system({"x", "y^3 - 2*z^3"}, R, 7));
    EXPECT_TRUE(sol.rational.empty());
    ASSERT_EQ(sol.higher.size(), 1u);
    EXPECT_EQ(sol.total_multiplicity(), 3u);
}
