#pragma once

// Fibers of the quadric surfaces over (u0, u1) values mod p.

#include "dolgachev/families/constraints.hpp"
#include "dolgachev/families/quadric.hpp"
#include "dolgachev/geomverify/local.hpp"
#include "dolgachev/grobner/hilbert.hpp"
#include "dolgachev/grobner/solve.hpp"

namespace dolgachev {

// Quadrics in the fiber variables with u0 = a, u1 = b.
inline std::vector<Poly<Fp>> fiber_ideal(const QuadricSystem<Fp>& sys, std::uint64_t a, std::uint64_t b) {
    std::vector<std::string> names;
    for (int i = 1; i <= 6; ++i) names.push_back(sys.fiber_var(i));
    RingPtr W = make_ring(names);
    std::vector<Poly<Fp>> out;
    for (auto& q : sys.q) out.push_back(specialize(q, {{"u0", a}, {"u1", b}}, W));
    return out;
}

inline HilbertPolynomial fiber_hilbert_polynomial(const QuadricSystem<Fp>& sys, std::uint64_t a, std::uint64_t b,
                                                  unsigned max_degree = 8) {
    return hilbert_polynomial(hilbert_function(fiber_ideal(sys, a, b), {}, max_degree));
}

template <class E>
struct FiberSingularPoint {
    std::vector<E> w;  // fiber coordinates, first nonzero entry 1
    PointClass cls;
};

struct FiberSingularities {
    std::vector<FiberSingularPoint<std::uint64_t>> rational;
    std::vector<FiberSingularPoint<Fp2Elem>> quadratic;  // conjugates both listed
    std::size_t candidates = 0;
    std::size_t unresolved = 0;  // candidates of residue degree > 2, not checked

    std::size_t count() const { return rational.size() + quadratic.size(); }
    std::size_t count(PointKind k) const {
        std::size_t c = 0;
        for (auto& p : rational) c += p.cls.kind == k;
        for (auto& p : quadratic) c += p.cls.kind == k;
        return c;
    }
};

namespace fiber_detail {

// Two coordinates whose hyperplanes are transversal to the torus orbit at the point:
// orbit tangents are (0, 0, w) and (2 u0, 3 u1, b_i w_i).
template <class D>
std::pair<std::size_t, std::size_t> slice_coords(const D& d, const std::vector<typename D::Elem>& pt) {
    std::size_t k = 2;
    while (k < 8 && d.is_zero(pt[k])) ++k;
    if (k == 8) throw NotOnScheme("all fiber coordinates vanish");
    if (!d.is_zero(pt[1])) return {1, k};
    if (!d.is_zero(pt[0])) return {0, k};
    throw IndeterminacyLocus("u0 = u1 = 0");
}

template <class D>
PointClass classify_surface_point(const std::vector<Poly<D>>& quads, const std::vector<typename D::Elem>& pt) {
    const D& d = quads[0].dom();
    auto [i, j] = slice_coords(d, pt);
    RingPtr R = quads[0].ring();
    std::vector<Poly<D>> eqs = quads;
    for (auto c : {i, j})
        eqs.push_back(Poly<D>::variable(R, d, c) - Poly<D>::constant(R, d, pt[c]));
    return classify_point(eqs, pt, 2);
}

}  // namespace fiber_detail

// Singular points of the surface lying on the fiber over (a, b). Candidates are the
// fiber points where `minors` random 4x4 minors of R J C vanish (a superset of the
// rank-drop locus); each is checked by the exact rank and classified.
inline FiberSingularities fiber_singular_points(const QuadricSystem<Fp>& sys, std::uint64_t a, std::uint64_t b,
                                                std::uint64_t seed = 17, unsigned minors = 3) {
    const Fp& F = sys.dom;
    const std::vector<Poly<Fp>>& Q = sys.q;
    RingPtr R = Q[0].ring();
    std::vector<std::string> vars = R->names();
    std::vector<std::string> wnames(vars.begin() + 2, vars.end());
    RingPtr W = make_ring(wnames);
    auto J = jacobian(Q, vars);
    std::vector<std::vector<Poly<Fp>>> JW;
    for (auto& row : J) {
        std::vector<Poly<Fp>> r;
        for (auto& e : row) r.push_back(specialize(e, {{"u0", a}, {"u1", b}}, W));
        JW.push_back(r);
    }
    auto fiber = fiber_ideal(sys, a, b);
    std::mt19937_64 rng(seed);
    std::vector<Poly<Fp>> gens = fiber;
    for (unsigned t = 0; t < minors + 5 && gens.size() < fiber.size() + minors; ++t) {
        // R J C with R: 4 x 9 random; C: one column mixing the u-columns, three mixing the w-columns
        std::vector<std::vector<std::uint64_t>> Rm(4, std::vector<std::uint64_t>(Q.size()));
        std::vector<std::vector<std::uint64_t>> Cm(4, std::vector<std::uint64_t>(8, 0));
        for (auto& row : Rm)
            for (auto& c : row) c = rng() % F.p;
        Cm[0][0] = rng() % F.p, Cm[0][1] = rng() % F.p;
        for (std::size_t c = 1; c < 4; ++c)
            for (std::size_t k = 2; k < 8; ++k) Cm[c][k] = rng() % F.p;
        std::vector<std::vector<Poly<Fp>>> M(4, std::vector<Poly<Fp>>(4, Poly<Fp>(W, F)));
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                for (std::size_t i = 0; i < Q.size(); ++i)
                    for (std::size_t k = 0; k < 8; ++k)
                        if (Cm[c][k] && Rm[r][i]) M[r][c] += JW[i][k].scale(F.mul(Rm[r][i], Cm[c][k]));
        Poly<Fp> det = poly_det(M, W, F);
        if (!det.is_zero()) gens.push_back(det);
    }
    std::optional<ZeroDimSolution> sol;
    try {
        sol = solve_projective(gens, SolveOptions{seed});
    } catch (const NotZeroDim&) {
        throw NotZeroDim("the rank-drop candidates on the fiber are not finite");
    }
    FiberSingularities out;
    out.candidates = sol->point_count();
    out.unresolved = sol->higher.size();
    for (auto& p : sol->rational) {
        std::vector<std::uint64_t> pt{a % F.p, b % F.p};
        pt.insert(pt.end(), p.coords.begin(), p.coords.end());
        if (jacobian_rank_at_point(Q, pt) >= 4) continue;
        out.rational.push_back({p.coords, fiber_detail::classify_surface_point(Q, pt)});
    }
    if (!sol->quadratic.empty()) {
        Fp2 F2(F.p);
        std::vector<Poly<Fp2>> Q2;
        for (auto& q : Q) Q2.push_back(lift_to_fp2(q, F2));
        for (auto& p : sol->quadratic) {
            std::vector<Fp2Elem> pt{F2.from_base(a), F2.from_base(b)};
            pt.insert(pt.end(), p.coords.begin(), p.coords.end());
            if (jacobian_rank_at_point(Q2, pt) >= 4) continue;
            out.quadratic.push_back({p.coords, fiber_detail::classify_surface_point(Q2, pt)});
        }
    }
    return out;
}

}  // namespace dolgachev
