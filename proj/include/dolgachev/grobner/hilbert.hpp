#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dolgachev/grobner/buchberger.hpp"

namespace dolgachev {

// Degree of a monomial under positive integer weights (empty = standard).
inline long weighted_degree(const Monomial& m, const std::vector<int>& w, std::size_t n) {
    if (w.empty()) return m.deg;
    long s = 0;
    for (std::size_t i = 0; i < n; ++i) s += long(w[i]) * m.e[i];
    return s;
}

template <class D>
void require_homogeneous(const std::vector<Poly<D>>& gens, const std::vector<int>& w) {
    for (auto& f : gens) {
        if (f.is_zero()) continue;
        long d0 = weighted_degree(f.lm(), w, f.ring()->nvars());
        for (auto& t : f.terms())
            if (weighted_degree(t.m, w, f.ring()->nvars()) != d0) throw NotHomogeneous(f.str());
    }
}

// Number of standard monomials (not divisible by any leading monomial) in each degree 0..D.
inline std::vector<long> count_standard_monomials(const std::vector<Monomial>& lead, std::size_t n,
                                                  const std::vector<int>& w, unsigned D) {
    std::vector<long> H(D + 1, 0);
    Monomial cur;
    std::function<void(std::size_t, long)> rec = [&](std::size_t var, long deg) {
        if (var == n) {
            for (auto& l : lead)
                if (l.divides(cur)) return;
            ++H[static_cast<std::size_t>(deg)];
            return;
        }
        long wi = w.empty() ? 1 : w[var];
        unsigned k = 0;
        for (;;) {
            // prune: already divisible by a leading monomial involving only vars <= var
            rec(var + 1, deg);
            if (deg + wi > long(D)) break;
            ++k;
            cur.e[var] = static_cast<std::uint8_t>(k);
            cur.deg = static_cast<std::uint16_t>(cur.deg + 1);
            deg += wi;
            bool dead = false;
            for (auto& l : lead) {
                bool only_prefix = true;
                for (std::size_t j = var + 1; j < n && only_prefix; ++j)
                    if (l.e[j]) only_prefix = false;
                if (only_prefix && l.divides(cur)) {
                    dead = true;
                    break;
                }
            }
            if (dead) break;
        }
        cur.deg = static_cast<std::uint16_t>(cur.deg - k);
        cur.e[var] = 0;
    };
    rec(0, 0);
    return H;
}

template <class D>
std::vector<long> hilbert_function(const GBasis<D>& G, const std::vector<int>& w, unsigned D_) {
    std::vector<Monomial> lead;
    for (auto& g : G.gens) lead.push_back(g.lm());
    return count_standard_monomials(lead, G.ring->nvars(), w, D_);
}

// Homogeneous ideal; the basis is computed in grevlex (or weighted grevlex).
template <class D>
std::vector<long> hilbert_function(const std::vector<Poly<D>>& gens, const std::vector<int>& w, unsigned D_,
                                   const Budget& budget = {}) {
    require_homogeneous(gens, w);
    RingPtr R = with_order(gens[0].ring(), w.empty() ? TermOrder::grevlex() : TermOrder::weighted(w));
    return hilbert_function(buchberger(gens, R, budget), w, D_);
}

// P(T) coefficients, constant first.
struct HilbertPolynomial {
    std::vector<Rational> coeffs;
    unsigned from_degree = 0;  // H(d) = P(d) observed for d >= from_degree
    std::string str(const std::string& var = "T") const {
        std::string s;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i] == 0) continue;
            Rational c = coeffs[i];
            std::string mag = to_string(Rational(abs(c)));
            if (!s.empty()) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
            if (i == 0) s += mag;
            else s += (mag == "1" ? "" : mag) + mono;
        }
        return s.empty() ? "0" : s;
    }
};

// Smallest k such that the k-th finite differences are constant over the
// last three values; P is the interpolant through the tail.
inline HilbertPolynomial hilbert_polynomial(const std::vector<long>& H) {
    const std::size_t n = H.size();
    std::vector<std::vector<Integer>> diffs{std::vector<Integer>(H.begin(), H.end())};
    for (std::size_t k = 0; k + 3 <= n; ++k) {
        const auto& dk = diffs[k];
        std::size_t m = dk.size();
        if (m >= 3 && dk[m - 1] == dk[m - 2] && dk[m - 2] == dk[m - 3]) {
            // tail window of length k+3 where a degree-k polynomial fits
            std::size_t start = n - (k + 3);
            // Lagrange-free fit via Newton forward differences at 'start'
            std::vector<Rational> coeffs(k + 1, 0);
            // P(d) = sum_j Delta^j H(start) * binom(d - start, j)
            for (std::size_t j = 0; j <= k; ++j) {
                Integer delta = diffs[j][start];
                // binom(d - start, j) as polynomial in d
                std::vector<Rational> b{1};
                for (std::size_t i = 0; i < j; ++i) {
                    // multiply by (d - start - i)/(i+1)
                    std::vector<Rational> nb(b.size() + 1, 0);
                    Rational shift = -Rational(long(start + i));
                    for (std::size_t e = 0; e < b.size(); ++e) {
                        nb[e + 1] += b[e] / long(i + 1);
                        nb[e] += b[e] * shift / long(i + 1);
                    }
                    b = nb;
                }
                for (std::size_t e = 0; e < b.size(); ++e) coeffs[e] += Rational(delta) * b[e];
            }
            while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
            if (coeffs.size() == 1 && coeffs[0] == 0) coeffs.clear();
            // earliest degree from which H agrees with P
            unsigned from = static_cast<unsigned>(start);
            auto P = [&](long d) {
                Rational v = 0, pw = 1;
                for (auto& c : coeffs) {
                    v += c * pw;
                    pw *= d;
                }
                return v;
            };
            while (from > 0 && P(long(from) - 1) == Rational(H[from - 1])) --from;
            return {coeffs, from};
        }
        std::vector<Integer> next;
        for (std::size_t i = 0; i + 1 < m; ++i) next.push_back(dk[i + 1] - dk[i]);
        diffs.push_back(next);
    }
    throw Unstabilized("finite differences did not stabilise; increase the degree bound");
}

// Krull dimension from leading monomials: largest set of variables S such
// that no leading monomial lies in k[S].
template <class D>
int krull_dimension(const GBasis<D>& G) {
    const std::size_t n = G.ring->nvars();
    if (G.is_unit()) return -1;
    int best = 0;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        int sz = __builtin_popcountl(mask);
        if (sz <= best) continue;
        bool indep = true;
        for (auto& g : G.gens) {
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i)
                if (g.lm().e[i] && !((mask >> i) & 1UL)) inside = false;
            if (inside) {
                indep = false;
                break;
            }
        }
        if (indep) best = sz;
    }
    return best;
}

}  // namespace dolgachev
