#pragma once

// Zero-dimensional solving over F_p through the quotient algebra: build the
// multiplication matrices on the standard monomials, split the
// characteristic polynomial of a random linear form, then read every
// coordinate off the joint eigenvector inside each eigenspace.

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "dolgachev/grobner/buchberger.hpp"
#include "dolgachev/grobner/linalg.hpp"
#include "dolgachev/grobner/upoly.hpp"
#include "dolgachev/poly/ops.hpp"

namespace dolgachev {

template <class E>
struct SolvedPoint {
    std::vector<E> coords;
    unsigned multiplicity = 1;
};

struct ClosedPoint {
    unsigned degree = 0;        // residue field degree over F_p
    unsigned multiplicity = 1;
    std::vector<std::uint64_t> linear_form_minpoly;  // minimal polynomial of the separating form
};

struct ZeroDimSolution {
    std::vector<SolvedPoint<std::uint64_t>> rational;
    std::vector<SolvedPoint<Fp2Elem>> quadratic;  // both conjugates listed
    std::vector<ClosedPoint> higher;
    std::size_t quotient_dim = 0;

    std::size_t total_multiplicity() const {
        std::size_t s = 0;
        for (auto& p : rational) s += p.multiplicity;
        for (auto& p : quadratic) s += p.multiplicity;
        for (auto& p : higher) s += std::size_t(p.degree) * p.multiplicity;
        return s;
    }
    std::size_t point_count() const { return rational.size() + quadratic.size() + higher.size(); }
};

inline Poly<Fp2> lift_to_fp2(const Poly<Fp>& f, const Fp2& F2) {
    return map_coeffs(f, F2, [&](std::uint64_t c) { return F2.from_base(c); });
}

template <class D>
std::vector<Monomial> standard_monomials(const GBasis<D>& G) {
    const std::size_t n = G.ring->nvars();
    std::vector<unsigned> bound(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& g : G.gens) {
            const Monomial& m = g.lm();
            if (m.deg == m.e[i] && m.e[i] > 0) bound[i] = bound[i] ? std::min<unsigned>(bound[i], m.e[i]) : m.e[i];
        }
        if (!bound[i]) throw NotZeroDim("no pure power of " + G.ring->name(i) + " among leading monomials");
    }
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == n) {
            for (auto& g : G.gens)
                if (g.lm().divides(cur)) return;
            out.push_back(cur);
            return;
        }
        for (unsigned k = 0; k < bound[v]; ++k) {
            cur.e[v] = static_cast<std::uint8_t>(k);
            cur.deg = static_cast<std::uint16_t>(cur.deg + (k ? 1 : 0));
            rec(v + 1);
        }
        cur.deg = static_cast<std::uint16_t>(cur.deg - (bound[v] - 1));
        cur.e[v] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return G.ring->cmp(a, b) < 0; });
    return out;
}

namespace solve_detail {

// Restriction of M to the invariant column space of A (m x k): returns R with M A = A R.
template <class D>
Matrix<D> restrict_to(const D& d, const Matrix<D>& M, const Matrix<D>& A) {
    const std::size_t k = A.empty() ? 0 : A[0].size();
    Matrix<D> MA = mat_mul(d, M, A);
    // pick k independent rows of A
    Matrix<D> At = transpose<D>(A);
    Matrix<D> tmp = At;
    auto rows = rref(d, tmp);  // pivot columns of A^T = independent rows of A
    Matrix<D> As, Bs;
    for (std::size_t r : rows) {
        As.push_back(A[r]);
        Bs.push_back(MA[r]);
    }
    auto inv = inverse(d, As);
    if (!inv || rows.size() != k) throw std::logic_error("restriction: basis not independent");
    return mat_mul(d, *inv, Bs);
}

// Joint eigenvector walk. Returns coordinates or nullopt when the linear form
// failed to separate points (some coordinate has two eigenvalues).
template <class D>
std::optional<std::vector<typename D::Elem>> joint_point(const D& d, const std::vector<Matrix<D>>& Ms,
                                                          const Matrix<D>& Ml, typename D::Elem lambda) {
    const std::size_t m = Ml.size();
    Matrix<D> S = Ml;
    for (std::size_t i = 0; i < m; ++i) S[i][i] = d.sub(S[i][i], lambda);
    auto ker = kernel(d, S, m);
    Matrix<D> A = transpose<D>(ker);  // columns span the eigenspace
    if (ker.empty()) return std::nullopt;
    UPolyRing<D> U(d);
    std::vector<typename D::Elem> coords;
    for (auto& Mi : Ms) {
        Matrix<D> R = restrict_to(d, Mi, A);
        auto cp = charpoly(d, R);
        U.trim(cp);
        auto rts = U.roots(cp);
        unsigned tot = 0;
        for (auto& r : rts) tot += r.second;
        if (rts.size() != 1 || tot != R.size()) return std::nullopt;
        auto val = rts[0].first;
        coords.push_back(val);
        Matrix<D> T = R;
        for (std::size_t i = 0; i < T.size(); ++i) T[i][i] = d.sub(T[i][i], val);
        auto k2 = kernel(d, T, T.size());
        A = mat_mul(d, A, transpose<D>(k2));
    }
    return coords;
}

template <class D>
Matrix<D> lift_matrix(const Matrix<Fp>& M, const D& d) {
    if constexpr (std::is_same_v<D, Fp>) {
        (void)d;
        return M;
    } else {
        Matrix<D> out(M.size());
        for (std::size_t i = 0; i < M.size(); ++i)
            for (auto v : M[i]) out[i].push_back(d.from_base(v));
        return out;
    }
}

}  // namespace solve_detail

struct SolveOptions {
    std::uint64_t seed = 0x5eed;
    int max_attempts = 20;
    Budget budget{};
};

// All points of a zero-dimensional ideal over F_p, with multiplicities.
inline ZeroDimSolution solve_zero_dim(const std::vector<Poly<Fp>>& gens, const SolveOptions& opt = {}) {
    if (gens.empty()) throw NotZeroDim("no equations");
    const Fp F = gens[0].dom();
    RingPtr R = with_order(gens[0].ring(), TermOrder::grevlex());
    GBasis<Fp> G = buchberger(gens, R, opt.budget);
    ZeroDimSolution sol;
    if (G.is_unit()) return sol;
    const std::size_t n = R->nvars();
    if (n == 0) {
        sol.quotient_dim = 1;
        sol.rational.push_back({{}, 1});
        return sol;
    }
    auto B = standard_monomials(G);
    const std::size_t m = B.size();
    sol.quotient_dim = m;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    for (std::size_t i = 0; i < m; ++i) index[B[i]] = i;
    std::vector<Matrix<Fp>> Ms;
    for (std::size_t v = 0; v < n; ++v) {
        Matrix<Fp> M = zero_matrix(F, m, m);
        for (std::size_t j = 0; j < m; ++j) {
            Poly<Fp> prod = Poly<Fp>::monomial(R, F, B[j] * Monomial::var(v), 1);
            Poly<Fp> nf = normal_form(prod, G);
            for (auto& t : nf.terms()) M[index.at(t.m)][j] = t.c;
        }
        Ms.push_back(std::move(M));
    }
    std::mt19937_64 rng(opt.seed);
    const Fp2 F2(F.p);
    UPolyRing<Fp> U(F);
    UPolyRing<Fp2> U2(F2);
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
        ZeroDimSolution out;
        out.quotient_dim = m;
        Matrix<Fp> Ml = zero_matrix(F, m, m);
        for (std::size_t v = 0; v < n; ++v) {
            std::uint64_t c = attempt == 0 && n == 1 ? 1 : rng() % F.p;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) Ml[i][j] = F.add(Ml[i][j], F.mul(c, Ms[v][i][j]));
        }
        auto chi = charpoly(F, Ml);
        bool ok = true;
        for (auto& [phi, mult] : U.factor(chi, rng())) {
            if (phi.size() == 2) {
                auto pt = solve_detail::joint_point(F, Ms, Ml, F.neg(phi[0]));
                if (!pt) {
                    ok = false;
                    break;
                }
                out.rational.push_back({*pt, mult});
            } else if (phi.size() == 3) {
                std::vector<Fp2Elem> phi2;
                for (auto c : phi) phi2.push_back(F2.from_base(c));
                std::vector<Matrix<Fp2>> Ms2;
                for (auto& M : Ms) Ms2.push_back(solve_detail::lift_matrix(M, F2));
                auto Ml2 = solve_detail::lift_matrix(Ml, F2);
                for (auto& [root, rm] : U2.roots(phi2, rng())) {
                    (void)rm;
                    auto pt = solve_detail::joint_point(F2, Ms2, Ml2, root);
                    if (!pt) {
                        ok = false;
                        break;
                    }
                    out.quadratic.push_back({*pt, mult});
                }
                if (!ok) break;
            } else {
                out.higher.push_back({static_cast<unsigned>(phi.size() - 1), mult, phi});
            }
        }
        if (ok && out.total_multiplicity() == m) {
            auto key = [](const auto& p) { return p.coords; };
            std::sort(out.rational.begin(), out.rational.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
            std::sort(out.quadratic.begin(), out.quadratic.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
            return out;
        }
    }
    throw NotZeroDim("could not find a separating linear form");
}

// Projective points of a homogeneous ideal: chart x_k = 1 keeps the points
// whose earlier coordinates vanish, so each point is reported once with its
// local multiplicity. Coordinates are normalised with first nonzero entry 1.
inline ZeroDimSolution solve_projective(const std::vector<Poly<Fp>>& gens, const SolveOptions& opt = {}) {
    const RingPtr& R = gens[0].ring();
    const Fp F = gens[0].dom();
    const std::size_t n = R->nvars();
    ZeroDimSolution all;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::string> rest;
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) rest.push_back(R->name(j));
        RingPtr A = make_ring(rest);
        std::map<std::string, Poly<Fp>> asg;
        asg.emplace(R->name(k), Poly<Fp>::constant(A, F, 1));
        std::vector<Poly<Fp>> aff;
        for (auto& g : gens) {
            Poly<Fp> h = substitute(g, asg, A);
            if (!h.is_zero()) aff.push_back(h);
        }
        ZeroDimSolution part;
        if (aff.empty()) {
            if (!rest.empty()) throw NotZeroDim("chart has no equations");
            part.rational.push_back({{}, 1});
            part.quotient_dim = 1;
        } else if (rest.empty()) {
            // constants only: nonzero constant means empty
            continue;
        } else {
            part = solve_zero_dim(aff, opt);
        }
        auto embed = [&](auto coords, auto zero, auto one) {
            decltype(coords) full;
            for (std::size_t j = 0, r = 0; j < n; ++j) full.push_back(j == k ? one : coords[r++]);
            for (std::size_t j = 0; j < k; ++j)
                if (!(full[j] == zero)) return std::optional<decltype(coords)>{};
            return std::optional<decltype(coords)>{full};
        };
        for (auto& p : part.rational)
            if (auto f = embed(p.coords, std::uint64_t(0), std::uint64_t(1))) all.rational.push_back({*f, p.multiplicity});
        for (auto& p : part.quadratic)
            if (auto f = embed(p.coords, Fp2Elem{0, 0}, Fp2Elem{1, 0})) all.quadratic.push_back({*f, p.multiplicity});
        all.quotient_dim += part.quotient_dim;
        if (part.higher.empty()) continue;
        if (k == 0) {
            all.higher.insert(all.higher.end(), part.higher.begin(), part.higher.end());
            continue;
        }
        // Closed points of degree > 2 have no coordinates; keep the ones with x_0..x_{k-1} = 0
        // by re-solving the chart with those coordinates imposed (multiplicity from that ideal).
        std::vector<Poly<Fp>> cut = aff;
        for (std::size_t j = 0; j < k; ++j) cut.push_back(Poly<Fp>::variable(A, F, j));
        ZeroDimSolution sub = solve_zero_dim(cut, opt);
        all.higher.insert(all.higher.end(), sub.higher.begin(), sub.higher.end());
    }
    return all;
}

}  // namespace dolgachev
