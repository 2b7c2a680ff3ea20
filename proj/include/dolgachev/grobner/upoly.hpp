#pragma once

// Dense univariate polynomials over a finite field domain (Fp or Fp2) and
// their factorization: square-free split, distinct-degree, then
// Cantor-Zassenhaus equal-degree splitting with a seeded generator.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "dolgachev/arith/domains.hpp"

namespace dolgachev {

template <class D>
class UPolyRing {
public:
    using E = typename D::Elem;
    using P = std::vector<E>;  // low degree first, no trailing zeros

    explicit UPolyRing(D d) : d_(std::move(d)) {}
    const D& dom() const { return d_; }

    void trim(P& a) const {
        while (!a.empty() && d_.is_zero(a.back())) a.pop_back();
    }
    long deg(const P& a) const { return static_cast<long>(a.size()) - 1; }
    P x() const { return {d_.zero(), d_.one()}; }
    P constant(E c) const {
        P r{c};
        trim(r);
        return r;
    }

    P add(const P& a, const P& b) const {
        P r(std::max(a.size(), b.size()), d_.zero());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = d_.add(r[i], b[i]);
        trim(r);
        return r;
    }
    P sub(const P& a, const P& b) const {
        P r(std::max(a.size(), b.size()), d_.zero());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = d_.sub(r[i], b[i]);
        trim(r);
        return r;
    }
    P mul(const P& a, const P& b) const {
        if (a.empty() || b.empty()) return {};
        P r(a.size() + b.size() - 1, d_.zero());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (d_.is_zero(a[i])) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = d_.add(r[i + j], d_.mul(a[i], b[j]));
        }
        trim(r);
        return r;
    }
    P scale(const P& a, E c) const {
        P r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = d_.mul(a[i], c);
        trim(r);
        return r;
    }
    P monic(const P& a) const { return a.empty() ? a : scale(a, d_.inv(a.back())); }

    std::pair<P, P> divmod(const P& a, const P& b) const {
        if (b.empty()) throw std::domain_error("polynomial division by zero");
        P r = a, q;
        if (r.size() < b.size()) return {q, r};
        q.assign(r.size() - b.size() + 1, d_.zero());
        E inv = d_.inv(b.back());
        for (std::size_t k = r.size(); k-- >= b.size();) {
            E c = d_.mul(r[k], inv);
            if (d_.is_zero(c)) continue;
            std::size_t s = k + 1 - b.size();
            q[s] = c;
            for (std::size_t j = 0; j < b.size(); ++j) r[s + j] = d_.sub(r[s + j], d_.mul(c, b[j]));
            if (k == 0) break;
        }
        trim(q);
        trim(r);
        return {q, r};
    }
    P mod(const P& a, const P& b) const { return divmod(a, b).second; }

    P gcd(P a, P b) const {
        while (!b.empty()) {
            P r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    P derivative(const P& a) const {
        P r;
        for (std::size_t i = 1; i < a.size(); ++i) r.push_back(d_.mul(a[i], d_.from_int(static_cast<long>(i % order_char()))));
        trim(r);
        return r;
    }
    E eval(const P& a, E x) const {
        E acc = d_.zero();
        for (std::size_t i = a.size(); i-- > 0;) acc = d_.add(d_.mul(acc, x), a[i]);
        return acc;
    }

    P powmod(P base, Integer e, const P& m) const {
        P r = constant(d_.one());
        base = mod(base, m);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = mod(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, base), m);
        }
        return r;
    }

    // Square-free decomposition: pairs (g_i, i) with f = lc * prod g_i^i.
    std::vector<std::pair<P, unsigned>> squarefree(const P& f) const {
        std::vector<std::pair<P, unsigned>> out;
        sqf_rec(monic(f), 1, out);
        std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.second < b.second; });
        return out;
    }

    // Distinct-degree: pairs (product of all irreducible factors of degree d, d).
    std::vector<std::pair<P, unsigned>> ddf(P f) const {
        std::vector<std::pair<P, unsigned>> out;
        P h = x();
        unsigned d = 0;
        while (deg(f) >= 2 * static_cast<long>(d + 1)) {
            ++d;
            h = powmod(h, q(), f);
            P g = gcd(sub(h, x()), f);
            if (deg(g) > 0) {
                out.emplace_back(g, d);
                f = divmod(f, g).first;
                h = mod(h, f);
            }
        }
        if (deg(f) > 0) out.emplace_back(monic(f), static_cast<unsigned>(deg(f)));
        return out;
    }

    // Equal-degree splitting of a product of distinct monic irreducibles of degree d.
    std::vector<P> edf(const P& f, unsigned d, std::mt19937_64& rng) const {
        if (deg(f) == static_cast<long>(d)) return {monic(f)};
        Integer qd = ipow(q(), d);
        Integer ex = (qd - 1) / 2;
        for (;;) {
            P a = random_poly(static_cast<std::size_t>(deg(f)), rng);
            if (deg(a) < 1) continue;
            P g = gcd(a, f);
            if (deg(g) > 0 && deg(g) < deg(f)) return join(edf(g, d, rng), edf(divmod(f, g).first, d, rng));
            P b = sub(powmod(a, ex, f), constant(d_.one()));
            g = gcd(b, f);
            if (deg(g) > 0 && deg(g) < deg(f)) return join(edf(g, d, rng), edf(divmod(f, g).first, d, rng));
        }
    }

    // Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
    std::vector<std::pair<P, unsigned>> factor(const P& f, std::uint64_t seed = 1) const {
        if (f.empty()) throw std::invalid_argument("factor of zero polynomial");
        std::mt19937_64 rng(seed);
        std::vector<std::pair<P, unsigned>> out;
        for (auto& [g, mult] : squarefree(f))
            for (auto& [h, d] : ddf(g))
                for (auto& irr : edf(h, d, rng)) out.emplace_back(irr, mult);
        std::sort(out.begin(), out.end(), [&](auto& a, auto& b) {
            if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
            return lex_less(a.first, b.first);
        });
        return out;
    }

    std::vector<std::pair<E, unsigned>> roots(const P& f, std::uint64_t seed = 1) const {
        std::vector<std::pair<E, unsigned>> out;
        for (auto& [g, m] : factor(f, seed))
            if (g.size() == 2) out.emplace_back(d_.neg(g[0]), m);
        return out;
    }

    Integer q() const { return from_u64(d_.order()); }

private:
    std::uint64_t order_char() const { return d_.p; }

    static std::vector<P> join(std::vector<P> a, std::vector<P> b) {
        for (auto& x : b) a.push_back(std::move(x));
        return a;
    }
    bool lex_less(const P& a, const P& b) const {
        for (std::size_t i = a.size(); i-- > 0;) {
            if (d_.eq(a[i], b[i])) continue;
            return elem_key(a[i]) < elem_key(b[i]);
        }
        return false;
    }
    static std::pair<std::uint64_t, std::uint64_t> elem_key(std::uint64_t v) { return {0, v}; }
    static std::pair<std::uint64_t, std::uint64_t> elem_key(const Fp2Elem& v) { return {v.b, v.a}; }

    E random_elem(std::mt19937_64& rng) const {
        if constexpr (std::is_same_v<E, Fp2Elem>) return Fp2Elem{rng() % d_.p, rng() % d_.p};
        else return static_cast<E>(rng() % d_.p);
    }
    P random_poly(std::size_t n, std::mt19937_64& rng) const {
        P a(n);
        for (auto& c : a) c = random_elem(rng);
        trim(a);
        return a;
    }
    E pth_root(E a) const {
        // Frobenius inverse: a^(q/p).
        return dom_pow(d_, a, d_.order() / d_.p);
    }

    void sqf_rec(const P& f, unsigned mult, std::vector<std::pair<P, unsigned>>& out) const {
        if (deg(f) < 1) return;
        P df = derivative(f);
        if (df.empty()) {
            // f = g(x^p)
            P g;
            for (std::size_t i = 0; i < f.size(); i += d_.p) g.push_back(pth_root(f[i]));
            trim(g);
            sqf_rec(monic(g), mult * static_cast<unsigned>(d_.p), out);
            return;
        }
        // Yun-style loop, falling back to recursion for the p-th power part.
        P c = gcd(f, df);
        P w = divmod(f, c).first;
        unsigned i = 1;
        while (deg(w) > 0) {
            P y = gcd(w, c);
            P z = divmod(w, y).first;
            if (deg(z) > 0) add_factor(out, monic(z), i * mult);
            ++i;
            w = y;
            c = divmod(c, y).first;
        }
        if (deg(c) > 0) {
            P g;
            for (std::size_t k = 0; k < c.size(); k += d_.p) g.push_back(pth_root(c[k]));
            trim(g);
            sqf_rec(monic(g), mult * static_cast<unsigned>(d_.p), out);
        }
    }
    void add_factor(std::vector<std::pair<P, unsigned>>& out, P g, unsigned m) const {
        for (auto& [h, k] : out)
            if (k == m) {
                h = mul(h, g);
                return;
            }
        out.emplace_back(std::move(g), m);
    }

    D d_;
};

}  // namespace dolgachev
