#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dolgachev/poly/poly.hpp"

namespace dolgachev {

template <class D>
Poly<D> derivative(const Poly<D>& f, std::size_t v) {
    const D& d = f.dom();
    std::vector<Term<D>> ts;
    for (auto& t : f.terms()) {
        unsigned k = t.m.e[v];
        if (!k) continue;
        Monomial m = t.m;
        m.e[v] = static_cast<std::uint8_t>(k - 1);
        m.deg = static_cast<std::uint16_t>(m.deg - 1);
        ts.push_back({m, d.mul(t.c, d.from_int(static_cast<long>(k)))});
    }
    return Poly<D>::from_terms(f.ring(), d, std::move(ts));
}

template <class D>
Poly<D> derivative(const Poly<D>& f, const std::string& var) {
    return derivative(f, f.ring()->require(var));
}

template <class D>
using PolyMatrix = std::vector<std::vector<Poly<D>>>;

template <class D>
PolyMatrix<D> jacobian(const std::vector<Poly<D>>& sys, const std::vector<std::string>& vars) {
    PolyMatrix<D> J;
    for (auto& f : sys) {
        std::vector<Poly<D>> row;
        for (auto& v : vars) row.push_back(derivative(f, v));
        J.push_back(std::move(row));
    }
    return J;
}

// Value at a point given in ring-variable order.
template <class D>
typename D::Elem evaluate(const Poly<D>& f, const std::vector<typename D::Elem>& pt) {
    const D& d = f.dom();
    const std::size_t n = f.ring()->nvars();
    if (pt.size() < n) throw std::invalid_argument("point has too few coordinates");
    std::vector<std::vector<typename D::Elem>> pw(n);
    for (std::size_t i = 0; i < n; ++i) {
        unsigned deg = f.degree_in(i);
        pw[i].reserve(deg + 1);
        pw[i].push_back(d.one());
        for (unsigned k = 1; k <= deg; ++k) pw[i].push_back(d.mul(pw[i].back(), pt[i]));
    }
    typename D::Elem acc = d.zero();
    for (auto& t : f.terms()) {
        typename D::Elem v = t.c;
        for (std::size_t i = 0; i < n; ++i)
            if (t.m.e[i]) v = d.mul(v, pw[i][t.m.e[i]]);
        acc = d.add(acc, v);
    }
    return acc;
}

// Composition: every variable of f is replaced by its image, a polynomial
// over a common target ring. Variables without an entry map to the
// same-named target variable, which must exist.
template <class D>
Poly<D> substitute(const Poly<D>& f, const std::map<std::string, Poly<D>>& assignment, const RingPtr& target) {
    const Ring& R = *f.ring();
    const D& d = f.dom();
    std::vector<std::optional<Poly<D>>> img(R.nvars());
    for (std::size_t i = 0; i < R.nvars(); ++i) {
        if (!f.degree_in(i)) continue;
        auto it = assignment.find(R.name(i));
        if (it != assignment.end()) {
            it->second.check_compatible(Poly<D>(target, d));
            img[i] = it->second;
        } else {
            int j = target->index(R.name(i));
            if (j < 0) throw std::invalid_argument("no image for variable " + R.name(i));
            img[i] = Poly<D>::variable(target, d, static_cast<std::size_t>(j));
        }
    }
    // Cache powers of each image.
    std::vector<std::vector<Poly<D>>> pw(R.nvars());
    for (std::size_t i = 0; i < R.nvars(); ++i) {
        unsigned deg = f.degree_in(i);
        if (!deg) continue;
        pw[i].push_back(Poly<D>::constant(target, d, d.one()));
        for (unsigned k = 1; k <= deg; ++k) pw[i].push_back(pw[i].back() * *img[i]);
    }
    std::vector<Term<D>> acc;
    for (auto& t : f.terms()) {
        Poly<D> prod = Poly<D>::constant(target, d, t.c);
        for (std::size_t i = 0; i < R.nvars() && !prod.is_zero(); ++i)
            if (t.m.e[i]) prod = prod * pw[i][t.m.e[i]];
        for (auto& s : prod.terms()) acc.push_back(s);
    }
    return Poly<D>::from_terms(target, d, std::move(acc));
}

template <class D>
Poly<D> substitute(const Poly<D>& f, const std::map<std::string, Poly<D>>& assignment) {
    return substitute(f, assignment, f.ring());
}

// Same polynomial viewed in another ring containing all its variables.
template <class D>
Poly<D> change_ring(const Poly<D>& f, const RingPtr& target) {
    const Ring& R = *f.ring();
    std::vector<int> map(R.nvars(), -1);
    for (std::size_t i = 0; i < R.nvars(); ++i) map[i] = target->index(R.name(i));
    std::vector<Term<D>> ts;
    ts.reserve(f.size());
    for (auto& t : f.terms()) {
        Monomial m;
        for (std::size_t i = 0; i < R.nvars(); ++i) {
            if (!t.m.e[i]) continue;
            if (map[i] < 0) throw std::invalid_argument("variable " + R.name(i) + " missing from target ring");
            m.e[static_cast<std::size_t>(map[i])] = t.m.e[i];
        }
        m.deg = t.m.deg;
        ts.push_back({m, t.c});
    }
    return Poly<D>::from_terms(target, f.dom(), std::move(ts));
}

// Partial evaluation: fix some variables to constants, keep the rest.
template <class D>
Poly<D> specialize(const Poly<D>& f, const std::map<std::string, typename D::Elem>& values, const RingPtr& target) {
    std::map<std::string, Poly<D>> asg;
    for (auto& [k, v] : values) asg.emplace(k, Poly<D>::constant(target, f.dom(), v));
    return substitute(f, asg, target);
}

// Bigrading.
using Bidegree = std::pair<int, int>;

class WeightTable {
public:
    WeightTable() = default;
    explicit WeightTable(std::map<std::string, Bidegree> w) : w_(std::move(w)) {}

    // u0 (0,2), u1 (0,3), v_i/w_i (1, 0 3 4 4 5 5); parameters (0,0).
    static WeightTable standard() {
        std::map<std::string, Bidegree> w{{"u0", {0, 2}}, {"u1", {0, 3}}};
        const int f[6] = {0, 3, 4, 4, 5, 5};
        for (int i = 0; i < 6; ++i) {
            w["v" + std::to_string(i + 1)] = {1, f[i]};
            w["w" + std::to_string(i + 1)] = {1, f[i]};
        }
        for (int i = 1; i <= 9; ++i) w["d" + std::to_string(i)] = {0, 0};
        for (int i = 2; i <= 4; ++i) w["s" + std::to_string(i)] = {0, 0};
        w["t"] = {0, 0};
        w["g"] = {2, 9};
        return WeightTable(std::move(w));
    }

    bool has(const std::string& v) const { return w_.count(v) > 0; }
    Bidegree at(const std::string& v) const {
        auto it = w_.find(v);
        if (it == w_.end()) throw std::invalid_argument("no weight for variable " + v);
        return it->second;
    }
    void set(const std::string& v, Bidegree b) { w_[v] = b; }
    const std::map<std::string, Bidegree>& entries() const { return w_; }

    Bidegree of(const Monomial& m, const Ring& R) const {
        Bidegree b{0, 0};
        for (std::size_t i = 0; i < R.nvars(); ++i)
            if (m.e[i]) {
                Bidegree wi = at(R.name(i));
                b.first += wi.first * m.e[i];
                b.second += wi.second * m.e[i];
            }
        return b;
    }

private:
    std::map<std::string, Bidegree> w_;
};

inline std::string to_string(const Bidegree& b) {
    return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")";
}

template <class D>
Bidegree bidegree(const Poly<D>& f, const WeightTable& W) {
    if (f.is_zero()) throw std::invalid_argument("bidegree of the zero polynomial");
    const Ring& R = *f.ring();
    Bidegree b = W.of(f.lm(), R);
    for (auto& t : f.terms()) {
        Bidegree c = W.of(t.m, R);
        if (c != b)
            throw Inhomogeneous("term " + monomial_str(t.m, R) + " has " + to_string(c) + ", leading term has " +
                                to_string(b));
    }
    return b;
}

template <class D>
std::optional<Bidegree> try_bidegree(const Poly<D>& f, const WeightTable& W) {
    try {
        return bidegree(f, W);
    } catch (const Inhomogeneous&) {
        return std::nullopt;
    }
}

}  // namespace dolgachev
