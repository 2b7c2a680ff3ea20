#pragma once

// Non-reduced hyperplane sections via the Jacobian criterion.

#include "dolgachev/families/constraints.hpp"
#include "dolgachev/grobner/buchberger.hpp"
#include "dolgachev/grobner/hilbert.hpp"

namespace dolgachev {

namespace cut_detail {

template <class D>
int cone_dimension(const std::vector<Poly<D>>& gens, const Budget& budget) {
    try {
        return krull_dimension(buchberger(gens, gens.at(0).ring(), budget));
    } catch (const BudgetExceeded& e) {
        throw DimensionUndetermined(e.what());
    }
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> s;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (s.size() == k) {
            out.push_back(s);
            return;
        }
        for (std::size_t j = i; j < n; ++j) {
            s.push_back(j);
            rec(j + 1);
            s.pop_back();
        }
    };
    rec(0);
}

}  // namespace cut_detail

struct CutAnalysis {
    int dim = -1;       // affine cone dimension of V(I + l)
    int sing_dim = -1;  // same for its singular locus
    bool nonreduced = false;
};

// V = V(I + l) in projective space; Sing V is cut out by I + l and the c x c
// minors of the Jacobian, c = codimension. True iff dim Sing V = dim V.
template <class D>
CutAnalysis analyze_cut(const std::vector<Poly<D>>& ideal, const Poly<D>& form, const Budget& budget = {}) {
    std::vector<Poly<D>> J = ideal;
    J.push_back(form);
    const RingPtr& R = form.ring();
    const D& d = form.dom();
    const std::size_t n = R->nvars();
    CutAnalysis out;
    out.dim = cut_detail::cone_dimension(J, budget);
    if (out.dim <= 0) return out;  // empty projective scheme
    const std::size_t c = n - static_cast<std::size_t>(out.dim);
    std::vector<std::vector<Poly<D>>> jac;
    for (auto& f : J) {
        std::vector<Poly<D>> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(derivative(f, j));
        jac.push_back(std::move(row));
    }
    std::vector<Poly<D>> sing = J;
    std::vector<std::vector<std::size_t>> rows, cols;
    cut_detail::subsets(J.size(), c, rows);
    cut_detail::subsets(n, c, cols);
    for (auto& rs : rows)
        for (auto& cs : cols) {
            std::vector<std::vector<Poly<D>>> M;
            for (auto r : rs) {
                std::vector<Poly<D>> row;
                for (auto k : cs) row.push_back(jac[r][k]);
                M.push_back(std::move(row));
            }
            Poly<D> m = poly_det(M, R, d);
            if (!m.is_zero()) sing.push_back(std::move(m));
        }
    out.sing_dim = cut_detail::cone_dimension(sing, budget);
    out.nonreduced = out.sing_dim == out.dim;
    return out;
}

template <class D>
bool nonreduced_cut(const std::vector<Poly<D>>& ideal, const Poly<D>& form, const Budget& budget = {}) {
    return analyze_cut(ideal, form, budget).nonreduced;
}

}  // namespace dolgachev
