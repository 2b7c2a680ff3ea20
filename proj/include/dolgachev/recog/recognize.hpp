#pragma once

// Algebraic numbers from p-adic approximations.

#include "dolgachev/arith/domains.hpp"
#include "dolgachev/arith/reconstruct.hpp"
#include "dolgachev/grobner/upoly.hpp"
#include "dolgachev/recog/lll.hpp"

namespace dolgachev {

// Ascending integer coefficients.
using IntPoly = std::vector<Integer>;

inline Integer eval_mod(const IntPoly& g, const Integer& x, const Integer& N) {
    Integer acc = 0;
    for (std::size_t i = g.size(); i-- > 0;) acc = mod(acc * x + g[i], N);
    return acc;
}

// Primitive, positive leading coefficient, trailing zeros trimmed.
inline IntPoly normalize_int_poly(IntPoly g) {
    while (!g.empty() && g.back() == 0) g.pop_back();
    if (g.empty()) return g;
    Integer c = 0;
    for (auto& a : g) c = gcd(c, a);
    for (auto& a : g) a /= c;
    if (g.back() < 0)
        for (auto& a : g) a = -a;
    return g;
}

inline Integer height(const IntPoly& g) {
    Integer h = 0;
    for (auto& a : g) h = std::max(h, Integer(abs(a)));
    return h;
}

inline IntPoly int_poly_gcd(const IntPoly& f, const IntPoly& g) {
    QQ Q;
    UPolyRing<QQ> U(Q);
    std::vector<Rational> a(f.begin(), f.end()), b(g.begin(), g.end());
    U.trim(a);
    U.trim(b);
    auto h = U.gcd(a, b);
    Integer den = 1;
    for (auto& c : h) den = lcm(den, c.get_den());
    IntPoly out;
    for (auto& c : h) out.push_back(Integer(c * den));
    return normalize_int_poly(out);
}

struct MinpolyResult {
    IntPoly poly;
    bool lll_bound_ok = false;
    bool tie = false;
};

// Relations c_0 + c_1 x + ... + c_d x^d = 0 mod p^K form the lattice spanned by
// (N, 0, ..., 0) and e_i - (x^i mod N) e_0; its short vectors are the candidates.
inline MinpolyResult minpoly_from_padic(const PadicApprox& x, unsigned d, const Integer& H) {
    if (d == 0) throw std::invalid_argument("degree bound must be positive");
    const Integer& N = x.modulus();
    IntLattice L;
    IntVec row0(d + 1, 0);
    row0[0] = N;
    L.basis.push_back(row0);
    Integer xi = 1;
    for (unsigned i = 1; i <= d; ++i) {
        xi = mod(xi * x.value(), N);
        IntVec r(d + 1, 0);
        r[0] = mod(-xi, N);
        r[i] = 1;
        L.basis.push_back(r);
    }
    LLLResult red = lll_reduce(L);
    MinpolyResult out;
    out.lll_bound_ok = red.bound_ok;
    std::optional<IntPoly> g;
    for (auto& v : red.reduced.basis) {
        IntPoly c = normalize_int_poly(v);
        if (c.size() < 2 || height(c) > H || eval_mod(c, x.value(), N) != 0) continue;
        if (!g) {
            g = c;
            continue;
        }
        IntPoly h = int_poly_gcd(*g, c);
        if (h.size() >= 2 && eval_mod(h, x.value(), N) == 0) g = h;
        else out.tie = true;  // independent verified relation; keep the shorter
    }
    if (!g) throw NoRelation("no relation of degree <= " + std::to_string(d) + " and height <= " + to_string(H));
    out.poly = *g;
    return out;
}

struct QuadRecognition {
    QuadElem value;
    bool tie = false;
};

// Minimal-height (a + b w)/c, w = i sqrt7, whose embedding on the branch equals x; re-verified.
inline QuadRecognition recognize_quadratic(const PadicApprox& x, Branch br, const Integer& H) {
    Integer r = sqrt_minus7_lift(x.p(), x.K(), br);
    QuadReconstruction q;
    try {
        q = quad_reconstruction(x, r, H);
    } catch (const NoReconstruction& e) {
        throw NoRelation(e.what());
    }
    if (!(embed_quad(q.value, x.p(), x.K(), br) == x)) throw NoRelation("candidate failed re-embedding");
    return {q.value, q.tie};
}

inline std::string format_int_poly(const IntPoly& g, const std::string& var) {
    std::string s;
    for (std::size_t i = g.size(); i-- > 0;) {
        if (g[i] == 0) continue;
        Integer a = abs(g[i]);
        std::string mono = i == 0 ? "" : i == 1 ? var : var + "^" + std::to_string(i);
        std::string mag = mono.empty() ? to_string(a) : a == 1 ? mono : to_string(a) + "*" + mono;
        if (s.empty()) s = g[i] < 0 ? "-" + mag : mag;
        else s += (g[i] < 0 ? " - " : " + ") + mag;
    }
    return s.empty() ? "0" : s;
}

}  // namespace dolgachev
