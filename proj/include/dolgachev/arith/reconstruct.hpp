#pragma once

#include <optional>

#include "dolgachev/arith/padic.hpp"
#include "dolgachev/recog/lll.hpp"

namespace dolgachev {

// a/b with |a|, |b| <= H and a = b*x mod p^K (half-extended Euclid).
inline Rational rational_reconstruction(const PadicApprox& x, const Integer& H) {
    const Integer& N = x.modulus();
    if (2 * H * H >= N) {
        // Uniqueness is not automatic here; enumerate denominators instead.
        if (H > 1000000) throw NoReconstruction("2H^2 >= p^K; precision too low for height " + to_string(H));
        std::optional<Rational> found;
        for (Integer b = 1; b <= H; ++b) {
            Integer a = mod(b * x.value(), N);
            if (2 * a > N) a -= N;
            if (abs(a) > H) continue;
            Rational q = make_rational(a, b);
            if (found && *found != q) throw NoReconstruction("ambiguous: several fractions of height <= " + to_string(H));
            found = q;
        }
        if (!found) throw NoReconstruction("no fraction of height <= " + to_string(H));
        return *found;
    }
    Integer r0 = N, r1 = x.value(), t0 = 0, t1 = 1;
    while (r1 > H) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > H || gcd(r1, t1) != 1)
        throw NoReconstruction("no fraction of height <= " + to_string(H));
    return make_rational(r1, t1);
}

struct QuadReconstruction {
    QuadElem value;
    Integer height;
    bool tie = false;
};

// (A + B*w)/C with max(|A|,|B|,|C|) <= H minimal and A + B*r = C*x mod p^K,
// where r is the chosen lift of sqrt(-7). Short vector of the lattice
// spanned by (N,0,0), (-r,1,0), (x,0,1).
inline QuadReconstruction quad_reconstruction(const PadicApprox& x, const Integer& r, const Integer& H) {
    const Integer& N = x.modulus();
    IntLattice L{{{N, 0, 0}, {mod(-r, N), 1, 0}, {x.value(), 0, 1}}};
    LLLResult red = lll_reduce(L);
    const IntMat& b = red.reduced.basis;
    std::optional<IntVec> best;
    Integer best_h, best_n;
    bool tie = false;
    const int R = 3;
    for (int c0 = -R; c0 <= R; ++c0)
        for (int c1 = -R; c1 <= R; ++c1)
            for (int c2 = -R; c2 <= R; ++c2) {
                IntVec v(3);
                for (int i = 0; i < 3; ++i) v[i] = c0 * b[0][i] + c1 * b[1][i] + c2 * b[2][i];
                if (v[2] <= 0) continue;
                if (gcd(gcd(v[0], v[1]), v[2]) != 1) continue;
                Integer h = std::max({Integer(abs(v[0])), Integer(abs(v[1])), v[2]});
                if (h > H) continue;
                Integer nrm = dot(v, v);
                if (!best || h < best_h || (h == best_h && nrm < best_n)) {
                    tie = best && h == best_h && nrm == best_n;
                    best = v;
                    best_h = h;
                    best_n = nrm;
                } else if (h == best_h && nrm == best_n && v != *best) {
                    tie = true;
                }
            }
    if (!best) throw NoReconstruction("no quadratic element of height <= " + to_string(H));
    const IntVec& v = *best;
    return {QuadElem(make_rational(v[0], v[2]), make_rational(v[1], v[2])), best_h, tie};
}

}  // namespace dolgachev
