#pragma once

// Nine-quadric presentations, the module basis {1, v3, v4, v5, v6, g = v3 v5}
// over the base ring k[u0, u1, v1, v2], product rewriting and the
// associativity check.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "dolgachev/families/dataset.hpp"
#include "dolgachev/grobner/linalg.hpp"
#include "dolgachev/poly/ops.hpp"

namespace dolgachev {

// Coefficient transfer from Q(i sqrt7) data into a working domain.
template <class D>
typename D::Elem coerce_coeff(const D& d, const QuadElem& c, Branch br) {
    if constexpr (std::is_same_v<D, QI7>) {
        (void)d, (void)br;
        return c;
    } else if constexpr (std::is_same_v<D, QQ>) {
        (void)d, (void)br;
        if (!c.is_rational()) throw DomainMismatch("coefficient " + to_string(c) + " is not rational");
        return c.a;
    } else if constexpr (std::is_same_v<D, Fp>) {
        return d.from_quad(c, br);
    } else {
        return d.from_base(Fp(d.p).from_quad(c, br));
    }
}

template <class D>
Poly<D> coerce_poly(const Poly<QI7>& f, const D& d, Branch br = Branch::plus, RingPtr R = nullptr) {
    Poly<D> g = map_coeffs(f, d, [&](const QuadElem& c) { return coerce_coeff(d, c, br); });
    return R ? change_ring(g, R) : g;
}

template <class D>
struct QuadricSystem {
    std::vector<Poly<D>> q;  // nine quadrics
    RingPtr ring;
    D dom;
    char style = 'w';  // fiber variables named v1..v6 or w1..w6

    std::string fiber_var(int i) const { return std::string(1, style) + std::to_string(i); }
};

template <class D>
QuadricSystem<D> load_quadric_system(const PolyDocument& doc, const D& d, Branch br = Branch::plus) {
    QuadricSystem<D> s;
    s.dom = d;
    s.ring = doc.ring;
    s.style = doc.ring->index("v1") >= 0 ? 'v' : 'w';
    for (int i = 1; i <= 9; ++i) s.q.push_back(coerce_poly(doc.get("q" + std::to_string(i)), d, br));
    return s;
}

// The family of nine quadrics with d1..d9 specialised; ring u0,u1,v1..v6.
template <class D>
QuadricSystem<D> instantiate_nine_param(const PolyDocument& family, const D& d,
                                        const std::vector<typename D::Elem>& params) {
    if (params.size() != 9) throw std::invalid_argument("nine parameters required");
    if (d.is_zero(params[1]) || d.is_zero(params[8])) throw RewriteSingular("d2*d9 = 0");
    RingPtr R = make_ring({"u0", "u1", "v1", "v2", "v3", "v4", "v5", "v6"});
    std::map<std::string, typename D::Elem> vals;
    for (int i = 0; i < 9; ++i) vals["d" + std::to_string(i + 1)] = params[static_cast<std::size_t>(i)];
    QuadricSystem<D> s;
    s.dom = d;
    s.ring = R;
    s.style = 'v';
    for (int i = 1; i <= 9; ++i)
        s.q.push_back(specialize(coerce_poly(family.get("q" + std::to_string(i)), d), vals, R));
    return s;
}

template <class D>
struct ModuleElement {
    // coordinates on 1, v3, v4, v5, v6, g
    std::array<Poly<D>, 6> c;
    bool operator==(const ModuleElement& o) const { return c == o.c; }
};

// Rewriting of quadratic monomials in v3..v6. Pivot pairs per weight class;
// the product v3*v5 stays as the extra generator g.
template <class D>
class ProductRewriter {
public:
    using Pair = std::pair<int, int>;  // indices 0..3 for v3..v6
    static constexpr std::array<std::array<Pair, 3>, 3> kPivots{{
        {{{0, 0}, {0, 1}, {1, 1}}},  // (2,8)
        {{{0, 3}, {1, 2}, {1, 3}}},  // (2,9)
        {{{2, 2}, {2, 3}, {3, 3}}},  // (2,10)
    }};

    explicit ProductRewriter(const QuadricSystem<D>& sys) : sys_(sys) {
        const D& d = sys.dom;
        for (int c = 0; c < 3; ++c)
            v_[c] = static_cast<std::size_t>(sys.ring->require(sys.fiber_var(c + 3)));
        v_[3] = sys.ring->require(sys.fiber_var(6));
        for (std::size_t cls = 0; cls < 3; ++cls) {
            Matrix<D> M = zero_matrix(d, 3, 3);
            std::array<Poly<D>, 3> rest;
            for (std::size_t i = 0; i < 3; ++i) {
                const Poly<D>& q = sys.q[3 * cls + i];
                rest[i] = q;
                for (std::size_t k = 0; k < 3; ++k) {
                    Monomial m = pair_monomial(kPivots[cls][k]);
                    M[i][k] = q.coeff(m);
                    rest[i] -= Poly<D>::monomial(sys.ring, d, m, M[i][k]);
                }
            }
            auto inv = inverse(d, M);
            if (!inv) throw RewriteSingular("pivot block " + std::to_string(cls + 1) + " is singular");
            for (std::size_t k = 0; k < 3; ++k) {
                Poly<D> r(sys.ring, d);
                for (std::size_t i = 0; i < 3; ++i) r -= rest[i].scale((*inv)[k][i]);
                rules_[kPivots[cls][k]] = r;
            }
        }
    }

    const std::map<Pair, Poly<D>>& rules() const { return rules_; }
    std::size_t var(int i) const { return v_[static_cast<std::size_t>(i)]; }

    // Rewrites until every term has v-degree <= 1 or equals g times base.
    Poly<D> reduce(Poly<D> P) const {
        const D& d = sys_.dom;
        for (std::size_t it = 0; it < kMaxRewrites; ++it) {
            const Term<D>* hit = nullptr;
            Pair pr{};
            for (auto& t : P.terms())
                if (auto p = first_pair(t.m)) {
                    hit = &t;
                    pr = *p;
                    break;
                }
            if (!hit) return P;
            Monomial rest = pair_monomial(pr).quotient_of(hit->m);
            Term<D> t = *hit;
            P -= Poly<D>::monomial(sys_.ring, d, t.m, t.c);
            P += rules_.at(pr).mul_term(rest, t.c);
        }
        throw std::runtime_error("product rewriting did not terminate");
    }

    ModuleElement<D> to_basis(const Poly<D>& P) const {
        Poly<D> r = reduce(P);
        const D& d = sys_.dom;
        ModuleElement<D> e;
        for (auto& c : e.c) c = Poly<D>(sys_.ring, d);
        std::array<std::vector<Term<D>>, 6> parts;
        for (auto& t : r.terms()) {
            Monomial base = t.m;
            std::size_t slot = 0;
            int deg = 0;
            for (int i = 0; i < 4; ++i) deg += t.m.e[var(i)];
            if (deg == 2) {
                slot = 5;
                base = pair_monomial({0, 2}).quotient_of(t.m);
            } else if (deg == 1) {
                for (int i = 0; i < 4; ++i)
                    if (t.m.e[var(i)]) {
                        slot = static_cast<std::size_t>(i) + 1;
                        base = Monomial::var(var(i)).quotient_of(t.m);
                    }
            }
            parts[slot].push_back({base, t.c});
        }
        for (std::size_t s = 0; s < 6; ++s) e.c[s] = Poly<D>::from_terms(sys_.ring, d, parts[s]);
        return e;
    }

    Poly<D> v(int i) const { return Poly<D>::variable(sys_.ring, sys_.dom, var(i)); }
    Poly<D> g() const { return v(0) * v(2); }

private:
    static constexpr std::size_t kMaxRewrites = 1000000;

    Monomial pair_monomial(Pair p) const { return Monomial::var(v_[p.first]) * Monomial::var(v_[p.second]); }

    // First reducible pair of the sorted v-index list of m, or none.
    std::optional<Pair> first_pair(const Monomial& m) const {
        std::vector<int> idx;
        for (int i = 0; i < 4; ++i)
            for (unsigned k = 0; k < m.e[v_[i]]; ++k) idx.push_back(i);
        if (idx.size() < 2) return std::nullopt;
        for (std::size_t x = 0; x < idx.size(); ++x)
            for (std::size_t y = x + 1; y < idx.size(); ++y) {
                Pair p{idx[x], idx[y]};
                if (rules_.count(p)) return p;
            }
        return std::nullopt;
    }

    QuadricSystem<D> sys_;
    std::array<std::size_t, 4> v_{};
    std::map<Pair, Poly<D>> rules_;
};

template <class D>
ModuleElement<D> reduce_to_basis(const Poly<D>& expr, const QuadricSystem<D>& sys) {
    return ProductRewriter<D>(sys).to_basis(expr);
}

struct AssociativityReport {
    std::vector<std::array<int, 3>> failing_triples;  // variable indices 3..6
    std::vector<int> failing_g;                       // k with g*v_k inconsistent
    bool pass() const { return failing_triples.empty() && failing_g.empty(); }
};

template <class D>
AssociativityReport check_associativity(const QuadricSystem<D>& sys) {
    ProductRewriter<D> rw(sys);
    AssociativityReport rep;
    std::array<std::array<Poly<D>, 4>, 4> prod;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) prod[i][j] = rw.reduce(rw.v(i) * rw.v(j));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                Poly<D> L = rw.reduce(prod[i][j] * rw.v(k));
                Poly<D> R = rw.reduce(rw.v(i) * prod[j][k]);
                if (!(L == R)) rep.failing_triples.push_back({i + 3, j + 3, k + 3});
            }
    for (int k = 0; k < 4; ++k) {
        Poly<D> a = rw.reduce(rw.g() * rw.v(k));
        Poly<D> b = rw.reduce(rw.v(2) * prod[0][k]);
        if (!(a == b)) rep.failing_g.push_back(k + 3);
    }
    return rep;
}

}  // namespace dolgachev
