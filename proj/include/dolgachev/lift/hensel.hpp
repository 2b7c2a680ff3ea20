#pragma once

// Lifting solutions mod p to mod p^K.

#include <optional>

#include <json.hpp>

#include "dolgachev/arith/padic.hpp"
#include "dolgachev/families/dataset.hpp"
#include "dolgachev/grobner/linalg.hpp"
#include "dolgachev/poly/ops.hpp"
#include "dolgachev/poly/text.hpp"

namespace dolgachev {

using json = nlohmann::json;

// Coefficient of a Q(i sqrt7) polynomial mod p^K; rational values need no square root of -7.
inline Integer coeff_mod(const QuadElem& c, std::uint64_t p, unsigned K, Branch br) {
    Integer N = ipow(from_u64(p), K);
    if (c.is_rational()) {
        if (mod(c.a.get_den(), from_u64(p)) == 0) throw DenominatorDivisibleByP(to_string(c));
        return rat_mod(c.a, N);
    }
    return embed_quad(c, p, K, br).value();
}

// Polynomial with coefficients reduced mod p^K, evaluated at integer points mod any p^k, k <= K.
class ModPoly {
public:
    ModPoly() = default;
    ModPoly(const Poly<QI7>& f, std::uint64_t p, unsigned K, Branch br) : nvars_(f.ring()->nvars()) {
        for (auto& t : f.terms()) terms_.push_back({t.m, coeff_mod(t.c, p, K, br)});
    }
    Integer operator()(const std::vector<Integer>& x, const Integer& m) const {
        Integer acc = 0;
        for (auto& [mono, c] : terms_) {
            Integer v = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (mono.e[i]) v = mod(v * powmod(x[i], mono.e[i], m), m);
            acc += v;
        }
        return mod(acc, m);
    }
    ModPoly derivative(std::size_t v) const {
        ModPoly d;
        d.nvars_ = nvars_;
        for (auto& [mono, c] : terms_)
            if (mono.e[v]) {
                Monomial m = mono;
                m.e[v] = static_cast<std::uint8_t>(m.e[v] - 1);
                m.deg = static_cast<std::uint16_t>(m.deg - 1);
                d.terms_.push_back({m, c * mono.e[v]});
            }
        return d;
    }

private:
    std::size_t nvars_ = 0;
    std::vector<std::pair<Monomial, Integer>> terms_;
};

struct UnivariateLift {
    PadicApprox root;
    unsigned steps = 0;  // precision doublings
};

// Newton iteration with precision doubling: 1, 2, 4, ..., K.
inline UnivariateLift hensel_univariate(const Poly<QI7>& f, std::uint64_t r, std::uint64_t p, unsigned K,
                                        Branch br = Branch::plus) {
    if (f.ring()->nvars() != 1) throw std::invalid_argument("univariate polynomial expected");
    if (K == 0) throw std::invalid_argument("K must be positive");
    ModPoly F(f, p, K, br), D = F.derivative(0);
    Integer P = from_u64(p);
    std::vector<Integer> x{mod(from_u64(r), P)};
    if (F(x, P) != 0) throw NotOnScheme("f(r) != 0 mod p, residual " + to_string(F(x, P)));
    if (D(x, P) == 0) throw SingularRoot("f'(r) = 0 mod p at r = " + std::to_string(r));
    unsigned prec = 1, steps = 0;
    while (prec < K) {
        prec = std::min(2 * prec, K);
        Integer m = ipow(P, prec);
        x[0] = mod(x[0] - F(x, m) * invmod(D(x, m), m), m);
        ++steps;
    }
    Integer N = ipow(P, K);
    if (F(x, N) != 0) throw std::logic_error("hensel_univariate: residual nonzero after lift");
    return {PadicApprox(x[0], p, K), steps};
}

struct LiftProblem {
    std::vector<Poly<QI7>> system;  // m equations in n unknowns (the ring variables)
    std::vector<std::uint64_t> start;
    std::uint64_t p = 0;
    unsigned K = 1;
    Branch branch = Branch::plus;
    std::optional<std::vector<std::size_t>> pivots;  // columns solved for; others held fixed

    std::string hash() const {
        json j{{"p", p}, {"K", K}, {"start", start}, {"branch", to_string(branch)}};
        for (auto& f : system) j["system"].push_back(format_poly(f));
        if (pivots) j["pivots"] = *pivots;
        return sha256_hex(j.dump());
    }
};

struct LiftCertificate {
    std::string problem_hash;
    std::uint64_t p = 0;
    unsigned K = 0;
    bool residual_zero = false;
    json to_json() const { return {{"problem_hash", problem_hash}, {"p", p}, {"K", K}, {"residual_zero", residual_zero}}; }
};

struct SystemLift {
    std::vector<PadicApprox> solution;
    std::vector<std::size_t> pivots;
    LiftCertificate certificate;
};

// First full-rank column subset in index order.
inline std::vector<std::size_t> choose_pivots(const Fp& F, const Matrix<Fp>& J) {
    std::vector<std::size_t> cols;
    const std::size_t m = J.size(), n = m ? J[0].size() : 0;
    for (std::size_t j = 0; j < n && cols.size() < m; ++j) {
        Matrix<Fp> sub(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (auto c : cols) sub[i].push_back(J[i][c]);
            sub[i].push_back(J[i][j]);
        }
        if (rank(F, sub) == cols.size() + 1) cols.push_back(j);
    }
    return cols;
}

// Linear per-digit iteration: x_{k+1} = x_k + p^k d with J(x_0) d = -F(x_k)/p^k mod p on the pivot columns.
inline SystemLift hensel_system(const LiftProblem& pr) {
    if (pr.system.empty()) throw std::invalid_argument("empty system");
    const std::size_t m = pr.system.size(), n = pr.system[0].ring()->nvars();
    if (pr.start.size() != n) throw std::invalid_argument("start point has wrong arity");
    if (m > n) throw RankDeficient("more equations than unknowns");
    Fp F(pr.p);
    Integer P = from_u64(pr.p);
    std::vector<ModPoly> Fs;
    std::vector<std::vector<ModPoly>> Js;
    for (auto& f : pr.system) {
        Fs.emplace_back(f, pr.p, pr.K, pr.branch);
        std::vector<ModPoly> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(Fs.back().derivative(j));
        Js.push_back(std::move(row));
    }
    std::vector<Integer> x;
    for (auto v : pr.start) x.push_back(mod(from_u64(v), P));
    for (std::size_t i = 0; i < m; ++i)
        if (Integer r = Fs[i](x, P); r != 0)
            throw NotOnScheme("equation " + std::to_string(i + 1) + " residual " + to_string(r) + " mod p at start");
    Matrix<Fp> J(m, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) J[i][j] = to_u64(Js[i][j](x, P));
    std::vector<std::size_t> piv = pr.pivots ? *pr.pivots : choose_pivots(F, J);
    if (piv.size() != m) throw RankDeficient("Jacobian rank " + std::to_string(rank(F, J)) + " < " + std::to_string(m) + " at step 1");
    Matrix<Fp> A(m);
    for (std::size_t i = 0; i < m; ++i)
        for (auto c : piv) A[i].push_back(J[i][c]);
    auto Ainv = inverse(F, A);
    if (!Ainv) throw RankDeficient("pivot block singular mod p at step 1");
    Integer pk = P;
    for (unsigned k = 1; k < pr.K; ++k) {
        Integer next = pk * P;
        std::vector<std::uint64_t> rhs(m);
        for (std::size_t i = 0; i < m; ++i) {
            Integer v = Fs[i](x, next);
            if (mod(v, pk) != 0)
                throw RankDeficient("residual not divisible by p^" + std::to_string(k) + " at step " + std::to_string(k));
            rhs[i] = F.neg(to_u64(mod(v / pk, P)));
        }
        for (std::size_t a = 0; a < m; ++a) {
            std::uint64_t d = 0;
            for (std::size_t b = 0; b < m; ++b) d = F.add(d, F.mul((*Ainv)[a][b], rhs[b]));
            x[piv[a]] += pk * from_u64(d);
        }
        pk = next;
    }
    SystemLift out;
    Integer N = ipow(P, pr.K);
    bool ok = true;
    for (auto& f : Fs) ok = ok && f(x, N) == 0;
    if (!ok) throw std::logic_error("hensel_system: residual nonzero after lift");
    for (auto& v : x) out.solution.emplace_back(v, pr.p, pr.K);
    out.pivots = piv;
    out.certificate = {pr.hash(), pr.p, pr.K, ok};
    return out;
}

// Result file: header line with the modulus, then one assignment per residue.
inline std::string format_residues(const std::vector<std::string>& names, const std::vector<PadicApprox>& xs) {
    if (xs.empty()) return "";
    std::string s = "# mod " + std::to_string(xs[0].p()) + "^" + std::to_string(xs[0].K()) + "\n";
    s += "vars " + names[0];
    for (std::size_t i = 1; i < names.size(); ++i) s += ", " + names[i];
    s += ";\n";
    for (std::size_t i = 0; i < xs.size(); ++i) s += names[i] + "_lift = " + to_string(xs[i].value()) + ";\n";
    return s;
}

}  // namespace dolgachev
