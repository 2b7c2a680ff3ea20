#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <limits>
#include <vector>

#include "dolgachev/poly/poly.hpp"

namespace dolgachev {

template <class D>
struct GBasis {
    std::vector<Poly<D>> gens;  // reduced, monic, sorted by leading monomial ascending
    RingPtr ring;
    D dom;

    bool is_unit() const { return gens.size() == 1 && gens[0].is_constant() && !gens[0].is_zero(); }
};

struct Budget {
    std::size_t max_reductions = std::numeric_limits<std::size_t>::max();
    double max_seconds = std::numeric_limits<double>::infinity();
};

// f reduced modulo the polynomials in G (full reduction of every term).
template <class D>
Poly<D> reduce_full(Poly<D> f, const std::vector<const Poly<D>*>& G) {
    const D& d = f.dom();
    std::vector<Term<D>> rem;
    while (!f.is_zero()) {
        const Monomial& m = f.lm();
        const Poly<D>* red = nullptr;
        for (auto* g : G)
            if (g->lm().divides(m)) {
                red = g;
                break;
            }
        if (!red) {
            rem.push_back(f.lead());
            f.mutable_terms().erase(f.mutable_terms().begin());
            continue;
        }
        auto c = d.mul(f.lc(), d.inv(red->lc()));
        f = f - red->mul_term(red->lm().quotient_of(m), c);
    }
    return Poly<D>::from_terms(f.ring(), d, std::move(rem));
}

template <class D>
Poly<D> normal_form(const Poly<D>& f, const GBasis<D>& G) {
    std::vector<const Poly<D>*> ptrs;
    for (auto& g : G.gens) ptrs.push_back(&g);
    Poly<D> ff = f.ring() == G.ring ? f : f.with_ring(G.ring);
    return reduce_full(ff, ptrs);
}

// Resumable Buchberger run with Gebauer-Moeller pair criteria and the sugar
// selection strategy. step() returns true once the basis is complete.
template <class D>
class BuchbergerRun {
public:
    BuchbergerRun(const std::vector<Poly<D>>& gens, RingPtr R) : ring_(std::move(R)) {
        if (gens.empty()) throw std::invalid_argument("empty generator list");
        dom_ = gens[0].dom();
        for (auto& g : gens) {
            Poly<D> h = g.ring() == ring_ ? g : g.with_ring(ring_);
            if (h.is_zero()) continue;
            add(h.monic(), h.total_degree());
        }
    }

    bool done() const { return pairs_.empty(); }
    std::size_t reductions() const { return reductions_; }

    bool step(const Budget& budget) {
        auto t0 = std::chrono::steady_clock::now();
        std::size_t start = reductions_;
        while (!pairs_.empty()) {
            if (reductions_ - start >= budget.max_reductions) return false;
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (el > budget.max_seconds) return false;
            // least sugar, then least lcm
            std::size_t best = 0;
            for (std::size_t i = 1; i < pairs_.size(); ++i) {
                const Pair& a = pairs_[i];
                const Pair& b = pairs_[best];
                if (a.sugar < b.sugar || (a.sugar == b.sugar && ring_->cmp(a.lcm, b.lcm) < 0)) best = i;
            }
            Pair pr = pairs_[best];
            pairs_[best] = pairs_.back();
            pairs_.pop_back();
            Poly<D> s = spoly(polys_[pr.i], polys_[pr.j], pr.lcm);
            ++reductions_;
            Poly<D> h = reduce_full(s, active_ptrs());
            if (!h.is_zero()) add(h.monic(), pr.sugar);
        }
        return true;
    }

    // Reduced basis; requires done().
    GBasis<D> result() const {
        if (!done()) throw BudgetExceeded("basis not complete");
        std::vector<Poly<D>> G;
        for (std::size_t i = 0; i < polys_.size(); ++i)
            if (active_[i]) G.push_back(polys_[i]);
        // minimal basis
        std::vector<Poly<D>> M;
        for (std::size_t i = 0; i < G.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
                if (i == j) continue;
                if (G[j].lm().divides(G[i].lm()) && (!(G[j].lm() == G[i].lm()) || j < i)) redundant = true;
            }
            if (!redundant) M.push_back(G[i]);
        }
        // tail reduction
        for (std::size_t i = 0; i < M.size(); ++i) {
            std::vector<const Poly<D>*> others;
            for (std::size_t j = 0; j < M.size(); ++j)
                if (j != i) others.push_back(&M[j]);
            Poly<D> tail = M[i] - Poly<D>::monomial(ring_, dom_, M[i].lm(), M[i].lc());
            Poly<D> red = reduce_full(tail, others);
            M[i] = (Poly<D>::monomial(ring_, dom_, M[i].lm(), M[i].lc()) + red).monic();
        }
        std::sort(M.begin(), M.end(), [&](const Poly<D>& a, const Poly<D>& b) { return ring_->cmp(a.lm(), b.lm()) < 0; });
        return {M, ring_, dom_};
    }

private:
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        unsigned sugar;
    };

    std::vector<const Poly<D>*> active_ptrs() const {
        std::vector<const Poly<D>*> v;
        for (std::size_t i = 0; i < polys_.size(); ++i)
            if (active_[i]) v.push_back(&polys_[i]);
        return v;
    }

    Poly<D> spoly(const Poly<D>& f, const Poly<D>& g, const Monomial& l) const {
        return f.mul_term(f.lm().quotient_of(l), dom_.inv(f.lc())) - g.mul_term(g.lm().quotient_of(l), dom_.inv(g.lc()));
    }

    unsigned pair_sugar(std::size_t i, std::size_t j, const Monomial& l) const {
        unsigned a = sugar_[i] - polys_[i].lm().deg + l.deg;
        unsigned b = sugar_[j] - polys_[j].lm().deg + l.deg;
        return std::max(a, b);
    }

    // Gebauer-Moeller update with new element h.
    void add(Poly<D> h, unsigned sugar) {
        std::size_t hi = polys_.size();
        const Monomial hm = h.lm();
        polys_.push_back(std::move(h));
        sugar_.push_back(std::max<unsigned>(sugar, polys_.back().total_degree()));
        active_.push_back(true);

        std::vector<Pair> C;
        for (std::size_t g = 0; g < hi; ++g)
            if (active_[g]) C.push_back({g, hi, polys_[g].lm().lcm(hm), 0});
        // Keep (h,g) if coprime, or if no other remaining/kept pair has an lcm dividing its lcm.
        std::vector<Pair> Dp;
        for (std::size_t a = 0; a < C.size(); ++a) {
            bool keep = polys_[C[a].i].lm().coprime(hm);
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < C.size() && keep; ++b)
                    if (C[b].lcm.divides(C[a].lcm)) keep = false;
                for (std::size_t b = 0; b < Dp.size() && keep; ++b)
                    if (Dp[b].lcm.divides(C[a].lcm)) keep = false;
            }
            if (keep) Dp.push_back(C[a]);
        }
        std::vector<Pair> B;
        for (auto& p : pairs_) {
            const Monomial& l = p.lcm;
            bool drop = hm.divides(l) && !(polys_[p.i].lm().lcm(hm) == l) && !(polys_[p.j].lm().lcm(hm) == l);
            if (!drop) B.push_back(p);
        }
        for (auto& p : Dp)
            if (!polys_[p.i].lm().coprime(hm)) {
                p.sugar = pair_sugar(p.i, p.j, p.lcm);
                B.push_back(p);
            }
        pairs_ = std::move(B);
        for (std::size_t g = 0; g < hi; ++g)
            if (active_[g] && hm.divides(polys_[g].lm())) active_[g] = false;
    }

    RingPtr ring_;
    D dom_;
    std::vector<Poly<D>> polys_;
    std::vector<unsigned> sugar_;
    std::vector<bool> active_;
    std::vector<Pair> pairs_;
    std::size_t reductions_ = 0;
};

template <class D>
GBasis<D> buchberger(const std::vector<Poly<D>>& gens, RingPtr R, const Budget& budget = {}) {
    BuchbergerRun<D> run(gens, std::move(R));
    if (!run.step(budget)) throw BudgetExceeded("Groebner budget exhausted after " + std::to_string(run.reductions()) + " reductions");
    return run.result();
}

template <class D>
GBasis<D> buchberger(const std::vector<Poly<D>>& gens, const Budget& budget = {}) {
    if (gens.empty()) throw std::invalid_argument("empty generator list");
    return buchberger(gens, gens[0].ring(), budget);
}

// Ring with the same variables and another order.
inline RingPtr with_order(const RingPtr& R, TermOrder o) { return make_ring(R->names(), std::move(o)); }

template <class D>
bool ideal_contains(const GBasis<D>& G, const Poly<D>& f) {
    return normal_form(f, G).is_zero();
}

}  // namespace dolgachev
