#pragma once

#include <cstddef>
#include <vector>

#include "dolgachev/arith/integer.hpp"

namespace dolgachev {

using IntVec = std::vector<Integer>;
using IntMat = std::vector<IntVec>;

struct IntLattice {
    IntMat basis;  // rows
    std::size_t dim() const { return basis.size(); }
};

struct LLLResult {
    IntLattice reduced;
    IntMat transform;  // transform * original = reduced
    bool bound_ok = false;
};

inline Integer dot(const IntVec& a, const IntVec& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Fraction-free Bareiss determinant of a square integer matrix.
inline Integer int_det(IntMat m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Round(a / b) for b > 0, ties away from zero.
inline Integer round_div(const Integer& a, const Integer& b) {
    Integer q;
    Integer twice = 2 * a + b;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), Integer(2 * b).get_mpz_t());
    return q;
}

// Integral LLL (all Gram-Schmidt data kept as exact integers d_i, lambda_ij).
// delta = delta_num / delta_den, default 0.99.
inline LLLResult lll_reduce(const IntLattice& in, long delta_num = 99, long delta_den = 100) {
    const std::size_t n = in.dim();
    IntMat b = in.basis;
    IntMat H(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) H[i][i] = 1;
    if (n == 0) return {in, H, true};

    // 1-based indices below; d[0] = 1.
    std::vector<Integer> d(n + 1, 0);
    std::vector<IntVec> lam(n + 1, IntVec(n + 1, 0));
    d[0] = 1;
    d[1] = dot(b[0], b[0]);
    if (d[1] == 0) throw DependentRows("zero first row");

    auto redi = [&](std::size_t k, std::size_t l) {
        Integer two = 2 * lam[k][l];
        if (abs(two) > d[l]) {
            Integer q = round_div(lam[k][l], d[l]);
            for (std::size_t c = 0; c < b[k - 1].size(); ++c) b[k - 1][c] -= q * b[l - 1][c];
            for (std::size_t c = 0; c < n; ++c) H[k - 1][c] -= q * H[l - 1][c];
            lam[k][l] -= q * d[l];
            for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
        }
    };

    std::size_t kmax = 1;
    auto swapi = [&](std::size_t k) {
        std::swap(b[k - 1], b[k - 2]);
        std::swap(H[k - 1], H[k - 2]);
        for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        Integer l = lam[k][k - 1];
        Integer B = (d[k - 2] * d[k] + l * l) / d[k - 1];
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            Integer t = lam[i][k];
            lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
            lam[i][k - 1] = (B * t + l * lam[i][k]) / d[k];
        }
        d[k - 1] = B;
    };

    std::size_t k = 2;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 1; j <= k; ++j) {
                Integer u = dot(b[k - 1], b[j - 1]);
                for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                if (j < k) lam[k][j] = u;
                else {
                    if (u == 0) throw DependentRows("rows are linearly dependent");
                    d[k] = u;
                }
            }
        }
        redi(k, k - 1);
        Integer lhs = delta_den * d[k] * d[k - 2];
        Integer rhs = delta_num * d[k - 1] * d[k - 1] - delta_den * lam[k][k - 1] * lam[k][k - 1];
        if (lhs < rhs) {
            swapi(k);
            if (k > 2) --k;
        } else {
            for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
            ++k;
        }
    }

    LLLResult res{{b}, H, false};
    // |b1|^(2n) <= 2^(n(n-1)) * det(Gram)
    Integer lhs = ipow(dot(b[0], b[0]), n);
    Integer rhs = ipow(Integer(2), n * (n - 1)) * d[n];
    res.bound_ok = lhs <= rhs;
    return res;
}

}  // namespace dolgachev
