#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dolgachev/arith/domains.hpp"
#include "dolgachev/poly/monomial.hpp"

namespace dolgachev {

template <class D>
struct Term {
    Monomial m;
    typename D::Elem c;
};

// Sparse polynomial: terms sorted strictly descending in the ring's order,
// no zero coefficients. Mixing rings or domain instances throws.
template <class D>
class Poly {
public:
    using Dom = D;
    using Elem = typename D::Elem;

    Poly() = default;
    Poly(RingPtr R, D dom) : ring_(std::move(R)), dom_(std::move(dom)) {}

    static Poly constant(RingPtr R, D dom, Elem c) {
        Poly p(std::move(R), std::move(dom));
        if (!p.dom_.is_zero(c)) p.terms_.push_back({Monomial{}, std::move(c)});
        return p;
    }
    static Poly variable(RingPtr R, D dom, std::size_t i, unsigned k = 1) {
        Poly p(std::move(R), std::move(dom));
        p.terms_.push_back({Monomial::var(i, k), p.dom_.one()});
        return p;
    }
    static Poly variable(RingPtr R, D dom, const std::string& name) {
        std::size_t i = R->require(name);
        return variable(std::move(R), std::move(dom), i);
    }
    static Poly monomial(RingPtr R, D dom, const Monomial& m, Elem c) {
        Poly p(std::move(R), std::move(dom));
        if (!p.dom_.is_zero(c)) p.terms_.push_back({m, std::move(c)});
        return p;
    }
    // Terms in any order, duplicates summed.
    static Poly from_terms(RingPtr R, D dom, std::vector<Term<D>> ts) {
        Poly p(std::move(R), std::move(dom));
        p.terms_ = std::move(ts);
        p.normalize();
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const D& dom() const { return dom_; }
    const std::vector<Term<D>>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    const Term<D>& lead() const { return terms_.front(); }
    const Monomial& lm() const { return terms_.front().m; }
    const Elem& lc() const { return terms_.front().c; }
    Poly zero_like() const { return Poly(ring_, dom_); }
    Poly one_like() const { return constant(ring_, dom_, dom_.one()); }

    unsigned total_degree() const {
        unsigned d = 0;
        for (auto& t : terms_) d = std::max<unsigned>(d, t.m.deg);
        return d;
    }
    unsigned degree_in(std::size_t v) const {
        unsigned d = 0;
        for (auto& t : terms_) d = std::max<unsigned>(d, t.m.e[v]);
        return d;
    }
    bool is_homogeneous() const {
        for (auto& t : terms_)
            if (t.m.deg != terms_[0].m.deg) return false;
        return true;
    }
    Elem coeff(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [&](const Term<D>& t, const Monomial& x) { return ring_->cmp(t.m, x) > 0; });
        if (it != terms_.end() && it->m == m) return it->c;
        return dom_.zero();
    }

    void check_compatible(const Poly& o) const {
        if (!ring_ || !o.ring_) throw DomainMismatch("uninitialised polynomial");
        if (ring_ != o.ring_ && !ring_->same_as(*o.ring_)) throw DomainMismatch("polynomials over different rings");
        if (!(dom_ == o.dom_)) throw DomainMismatch(dom_.name() + " vs " + o.dom_.name());
    }

    Poly operator+(const Poly& o) const { return merge(o, false); }
    Poly operator-(const Poly& o) const { return merge(o, true); }
    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.terms_) t.c = dom_.neg(t.c);
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    Poly scale(const Elem& c) const {
        if (dom_.is_zero(c)) return zero_like();
        Poly r = *this;
        for (auto& t : r.terms_) t.c = dom_.mul(t.c, c);
        if constexpr (!D::is_field) r.drop_zeros();
        return r;
    }
    Poly mul_term(const Monomial& m, const Elem& c) const {
        if (dom_.is_zero(c)) return zero_like();
        Poly r(ring_, dom_);
        r.terms_.reserve(terms_.size());
        for (auto& t : terms_) r.terms_.push_back({t.m * m, dom_.mul(t.c, c)});
        if constexpr (!D::is_field) r.drop_zeros();
        return r;
    }

    Poly operator*(const Poly& o) const {
        check_compatible(o);
        if (is_zero() || o.is_zero()) return zero_like();
        if (o.size() == 1) return mul_term(o.terms_[0].m, o.terms_[0].c);
        if (size() == 1) return o.mul_term(terms_[0].m, terms_[0].c);
        // Sum of shifted copies, combined pairwise to keep merges balanced.
        std::vector<Poly> parts;
        const Poly& small = size() <= o.size() ? *this : o;
        const Poly& big = size() <= o.size() ? o : *this;
        parts.reserve(small.size());
        for (auto& t : small.terms_) parts.push_back(big.mul_term(t.m, t.c));
        while (parts.size() > 1) {
            std::vector<Poly> next;
            for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
            if (parts.size() % 2) next.push_back(std::move(parts.back()));
            parts = std::move(next);
        }
        return parts[0];
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(unsigned e) const {
        Poly r = one_like(), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    bool operator==(const Poly& o) const {
        check_compatible(o);
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (!(terms_[i].m == o.terms_[i].m) || !dom_.eq(terms_[i].c, o.terms_[i].c)) return false;
        return true;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scale(dom_.inv(lc()));
    }

    // Re-sort after changing the ring (same variable count, new order).
    Poly with_ring(RingPtr R) const {
        if (R->nvars() != ring_->nvars()) throw DomainMismatch("variable count differs");
        return from_terms(std::move(R), dom_, terms_);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& t : terms_) {
            if (!s.empty()) s += " + ";
            std::string c = dom_.str(t.c);
            if (t.m.is_one()) s += c;
            else s += c + "*" + monomial_str(t.m, *ring_);
        }
        return s;
    }

    // Raw access for algorithms that maintain the invariants themselves.
    std::vector<Term<D>>& mutable_terms() { return terms_; }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [&](const Term<D>& a, const Term<D>& b) { return ring_->cmp(a.m, b.m) > 0; });
        std::vector<Term<D>> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().m == t.m) out.back().c = dom_.add(out.back().c, t.c);
            else out.push_back(std::move(t));
        }
        terms_ = std::move(out);
        drop_zeros();
    }

private:
    void drop_zeros() {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [&](const Term<D>& t) { return dom_.is_zero(t.c); }),
                     terms_.end());
    }

    Poly merge(const Poly& o, bool subtract) const {
        check_compatible(o);
        Poly r(ring_, dom_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            int c;
            if (i == terms_.size()) c = -1;
            else if (j == o.terms_.size()) c = 1;
            else c = ring_->cmp(terms_[i].m, o.terms_[j].m);
            if (c > 0) r.terms_.push_back(terms_[i++]);
            else if (c < 0) {
                r.terms_.push_back({o.terms_[j].m, subtract ? dom_.neg(o.terms_[j].c) : o.terms_[j].c});
                ++j;
            } else {
                Elem s = subtract ? dom_.sub(terms_[i].c, o.terms_[j].c) : dom_.add(terms_[i].c, o.terms_[j].c);
                if (!dom_.is_zero(s)) r.terms_.push_back({terms_[i].m, std::move(s)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    RingPtr ring_;
    D dom_;
    std::vector<Term<D>> terms_;
};

// Coefficient map into another domain over the same ring.
template <class D2, class D, class F>
Poly<D2> map_coeffs(const Poly<D>& f, const D2& dom2, F&& fn) {
    std::vector<Term<D2>> ts;
    ts.reserve(f.size());
    for (auto& t : f.terms()) ts.push_back({t.m, fn(t.c)});
    return Poly<D2>::from_terms(f.ring(), dom2, std::move(ts));
}

// Reduction of Q(i*sqrt7) data to F_p on a conjugate branch.
inline Poly<Fp> reduce_mod_p(const Poly<QI7>& f, const Fp& F, Branch br) {
    return map_coeffs(f, F, [&](const QuadElem& c) { return F.from_quad(c, br); });
}

inline Poly<QI7> to_qi7(const Poly<QQ>& f) {
    return map_coeffs(f, QI7{}, [](const Rational& c) { return QuadElem(c); });
}

// Rational image; throws if some coefficient involves I7.
inline Poly<QQ> to_qq(const Poly<QI7>& f) {
    return map_coeffs(f, QQ{}, [](const QuadElem& c) {
        if (!c.is_rational()) throw DomainMismatch("coefficient " + to_string(c) + " is not rational");
        return c.a;
    });
}

}  // namespace dolgachev
