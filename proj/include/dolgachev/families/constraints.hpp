#pragma once

// Constraint generation: line containment and Jacobian rank drop at a
// parametric point, with multivariate gcd cleanup of the minors.

#include <map>
#include <string>
#include <vector>

#include "dolgachev/grobner/buchberger.hpp"
#include "dolgachev/poly/ops.hpp"

namespace dolgachev {

// Exact quotient f / g, or nullopt if g does not divide f.
template <class D>
std::optional<Poly<D>> divide_exact(const Poly<D>& f, const Poly<D>& g) {
    if (g.is_zero()) throw std::domain_error("division by zero polynomial");
    const D& d = f.dom();
    std::vector<Term<D>> q;
    Poly<D> r = f;
    while (!r.is_zero()) {
        if (!g.lm().divides(r.lm())) return std::nullopt;
        Monomial m = g.lm().quotient_of(r.lm());
        auto c = d.mul(r.lc(), d.inv(g.lc()));
        q.push_back({m, c});
        r -= g.mul_term(m, c);
    }
    return Poly<D>::from_terms(f.ring(), d, q);
}

// gcd over a field through the lcm: <f> cap <g> from eliminating t in <t f, (1-t) g>.
template <class D>
Poly<D> poly_gcd(const Poly<D>& f, const Poly<D>& g) {
    if (f.is_zero()) return g.is_zero() ? g : g.monic();
    if (g.is_zero()) return f.monic();
    if (f.is_constant() || g.is_constant()) return f.one_like();
    const RingPtr& R = f.ring();
    std::vector<std::string> names{"_t"};
    for (auto& n : R->names()) names.push_back(n);
    RingPtr L = make_ring(names, TermOrder::lex());
    Poly<D> F = change_ring(f, L), G = change_ring(g, L);
    Poly<D> t = Poly<D>::variable(L, f.dom(), 0);
    auto B = buchberger(std::vector<Poly<D>>{t * F, (Poly<D>::constant(L, f.dom(), f.dom().one()) - t) * G}, L);
    for (auto& b : B.gens)
        if (b.degree_in(0) == 0) {
            Poly<D> lcm = change_ring(b, R);
            auto q = divide_exact(f * g, lcm);
            if (!q) throw std::logic_error("gcd: lcm does not divide product");
            return q->monic();
        }
    throw std::logic_error("gcd: no elimination element");
}

template <class D>
Poly<D> poly_gcd(const std::vector<Poly<D>>& fs, const RingPtr& R, const D& d) {
    Poly<D> acc(R, d);
    for (auto& f : fs) {
        acc = poly_gcd(acc, f);
        if (!acc.is_zero() && acc.is_constant()) break;
    }
    return acc;
}

// Determinant by cofactor expansion (small polynomial matrices).
template <class D>
Poly<D> poly_det(const std::vector<std::vector<Poly<D>>>& M, const RingPtr& R, const D& d) {
    const std::size_t n = M.size();
    if (n == 0) return Poly<D>::constant(R, d, d.one());
    if (n == 1) return M[0][0];
    Poly<D> acc(R, d);
    for (std::size_t j = 0; j < n; ++j) {
        if (M[0][j].is_zero()) continue;
        std::vector<std::vector<Poly<D>>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly<D>> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(M[i][k]);
            sub.push_back(row);
        }
        Poly<D> term = M[0][j] * poly_det(sub, R, d);
        acc = j % 2 ? acc - term : acc + term;
    }
    return acc;
}

// All k x k minors of an r x c matrix, rows and columns in lexicographic subset order.
template <class D>
std::vector<Poly<D>> maximal_minors(const std::vector<std::vector<Poly<D>>>& M, const RingPtr& R, const D& d) {
    const std::size_t r = M.size(), c = r ? M[0].size() : 0, k = std::min(r, c);
    std::vector<Poly<D>> out;
    std::vector<std::size_t> rows(k), cols(k);
    std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&, std::size_t,
                       const std::function<void()>&)>
        choose = [&](std::size_t start, std::size_t depth, std::vector<std::size_t>& sel, std::size_t n,
                     const std::function<void()>& f) {
            if (depth == sel.size()) return f();
            for (std::size_t i = start; i < n; ++i) {
                sel[depth] = i;
                choose(i + 1, depth + 1, sel, n, f);
            }
        };
    choose(0, 0, rows, r, [&] {
        choose(0, 0, cols, c, [&] {
            std::vector<std::vector<Poly<D>>> sub(k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub[i].push_back(M[rows[i]][cols[j]]);
            out.push_back(poly_det(sub, R, d));
        });
    });
    return out;
}

// A line x_i = alpha_i r + beta_i s; alpha, beta are polynomials over a parameter ring.
template <class D>
struct ParamLine {
    std::vector<std::string> vars;
    std::vector<Poly<D>> alpha, beta;
};

template <class D>
ParamLine<D> generic_line(const std::vector<std::string>& vars, const D& d, const std::string& a = "a",
                          const std::string& b = "b") {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vars.size(); ++i) names.push_back(a + std::to_string(i + 1));
    for (std::size_t i = 0; i < vars.size(); ++i) names.push_back(b + std::to_string(i + 1));
    RingPtr P = make_ring(names);
    ParamLine<D> L{vars, {}, {}};
    for (std::size_t i = 0; i < vars.size(); ++i) {
        L.alpha.push_back(Poly<D>::variable(P, d, i));
        L.beta.push_back(Poly<D>::variable(P, d, vars.size() + i));
    }
    return L;
}

// Coefficients of r^2, r s, s^2 of each quadric restricted to the line;
// fixed maps the remaining variables (e.g. u0, u1) to parameter-ring values.
template <class D>
std::vector<Poly<D>> line_constraints(const std::vector<Poly<D>>& quadrics, const ParamLine<D>& line,
                                      const std::map<std::string, Poly<D>>& fixed) {
    if (line.alpha.empty()) throw std::invalid_argument("empty line");
    const RingPtr& P = line.alpha[0].ring();
    const D& d = line.alpha[0].dom();
    std::vector<std::string> names{"_r", "_s"};
    for (auto& n : P->names()) names.push_back(n);
    RingPtr T = make_ring(names);
    Poly<D> r = Poly<D>::variable(T, d, 0), s = Poly<D>::variable(T, d, 1);
    std::map<std::string, Poly<D>> asg;
    for (std::size_t i = 0; i < line.vars.size(); ++i)
        asg[line.vars[i]] = r * change_ring(line.alpha[i], T) + s * change_ring(line.beta[i], T);
    for (auto& [k, v] : fixed) asg[k] = change_ring(v, T);
    std::vector<Poly<D>> out;
    for (auto& q : quadrics) {
        Poly<D> h = substitute(q, asg, T);
        for (auto [er, es] : {std::pair{2, 0}, std::pair{1, 1}, std::pair{0, 2}}) {
            std::vector<Term<D>> ts;
            for (auto& t : h.terms())
                if (t.m.e[0] == er && t.m.e[1] == es) {
                    Monomial m = t.m;
                    m.e[0] = m.e[1] = 0;
                    m.deg = static_cast<std::uint16_t>(m.deg - 2);
                    ts.push_back({m, t.c});
                }
            out.push_back(change_ring(Poly<D>::from_terms(T, d, ts), P));
        }
    }
    return out;
}

template <class D>
struct SingularityConstraints {
    std::vector<Poly<D>> membership;  // system evaluated at the point
    std::vector<Poly<D>> minors;      // maximal minors of the evaluated Jacobian
    Poly<D> gcd;                      // gcd of the minors (zero if all vanish)
};

// point maps each variable of vars to a polynomial in the parameter ring P;
// the remaining variables of the system must be variables of P.
template <class D>
SingularityConstraints<D> singularity_constraints(const std::vector<Poly<D>>& system,
                                                  const std::vector<std::string>& vars,
                                                  const std::map<std::string, Poly<D>>& point, const RingPtr& P) {
    const D& d = system.at(0).dom();
    SingularityConstraints<D> out;
    for (auto& f : system) out.membership.push_back(substitute(f, point, P));
    auto J = jacobian(system, vars);
    std::vector<std::vector<Poly<D>>> JP;
    for (auto& row : J) {
        std::vector<Poly<D>> r;
        for (auto& e : row) r.push_back(substitute(e, point, P));
        JP.push_back(r);
    }
    out.minors = maximal_minors(JP, P, d);
    out.gcd = poly_gcd(out.minors, P, d);
    return out;
}

}  // namespace dolgachev
