#pragma once

#include <optional>
#include <vector>

#include "dolgachev/arith/domains.hpp"

namespace dolgachev {

template <class D>
using Matrix = std::vector<std::vector<typename D::Elem>>;

template <class D>
Matrix<D> zero_matrix(const D& d, std::size_t r, std::size_t c) {
    return Matrix<D>(r, std::vector<typename D::Elem>(c, d.zero()));
}

template <class D>
Matrix<D> identity_matrix(const D& d, std::size_t n) {
    Matrix<D> m = zero_matrix(d, n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = d.one();
    return m;
}

template <class D>
Matrix<D> mat_mul(const D& d, const Matrix<D>& a, const Matrix<D>& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Matrix<D> c = zero_matrix(d, n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (d.is_zero(a[i][l])) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] = d.add(c[i][j], d.mul(a[i][l], b[l][j]));
        }
    return c;
}

template <class D>
Matrix<D> transpose(const Matrix<D>& a) {
    if (a.empty()) return {};
    Matrix<D> t(a[0].size(), std::vector<typename D::Elem>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

// In-place reduced row echelon form; returns pivot columns.
template <class D>
std::vector<std::size_t> rref(const D& d, Matrix<D>& a) {
    std::vector<std::size_t> piv;
    if (a.empty()) return piv;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && d.is_zero(a[p][c])) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        auto inv = d.inv(a[r][c]);
        for (std::size_t j = c; j < cols; ++j) a[r][j] = d.mul(a[r][j], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || d.is_zero(a[i][c])) continue;
            auto f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] = d.sub(a[i][j], d.mul(f, a[r][j]));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class D>
std::size_t rank(const D& d, Matrix<D> a) {
    return rref(d, a).size();
}

// Basis of the right kernel {x : a x = 0}, as column vectors.
template <class D>
std::vector<std::vector<typename D::Elem>> kernel(const D& d, Matrix<D> a, std::size_t cols) {
    std::vector<std::vector<typename D::Elem>> out;
    if (a.empty()) {
        for (std::size_t j = 0; j < cols; ++j) {
            std::vector<typename D::Elem> v(cols, d.zero());
            v[j] = d.one();
            out.push_back(v);
        }
        return out;
    }
    auto piv = rref(d, a);
    std::vector<int> is_piv(cols, -1);
    for (std::size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = static_cast<int>(i);
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f] >= 0) continue;
        std::vector<typename D::Elem> v(cols, d.zero());
        v[f] = d.one();
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = d.neg(a[i][f]);
        out.push_back(std::move(v));
    }
    return out;
}

// One solution of a x = b, or nullopt if inconsistent.
template <class D>
std::optional<std::vector<typename D::Elem>> solve_linear(const D& d, const Matrix<D>& a,
                                                          const std::vector<typename D::Elem>& b) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    Matrix<D> aug = a;
    for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    auto piv = rref(d, aug);
    std::vector<typename D::Elem> x(cols, d.zero());
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == cols) return std::nullopt;
        x[piv[i]] = aug[i][cols];
    }
    return x;
}

template <class D>
std::optional<Matrix<D>> inverse(const D& d, const Matrix<D>& a) {
    const std::size_t n = a.size();
    Matrix<D> aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        aug[i].resize(2 * n, d.zero());
        aug[i][n + i] = d.one();
    }
    auto piv = rref(d, aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix<D> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i].assign(aug[i].begin() + static_cast<long>(n), aug[i].end());
    return inv;
}

template <class D>
typename D::Elem determinant(const D& d, Matrix<D> a) {
    const std::size_t n = a.size();
    auto det = d.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && d.is_zero(a[p][c])) ++p;
        if (p == n) return d.zero();
        if (p != c) {
            std::swap(a[p], a[c]);
            det = d.neg(det);
        }
        det = d.mul(det, a[c][c]);
        auto inv = d.inv(a[c][c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (d.is_zero(a[i][c])) continue;
            auto f = d.mul(a[i][c], inv);
            for (std::size_t j = c; j < n; ++j) a[i][j] = d.sub(a[i][j], d.mul(f, a[c][j]));
        }
    }
    return det;
}

// Characteristic polynomial det(x I - a), coefficients low to high, via
// Hessenberg reduction (field operations only, any characteristic).
template <class D>
std::vector<typename D::Elem> charpoly(const D& d, Matrix<D> a) {
    const std::size_t n = a.size();
    using E = typename D::Elem;
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t i = m;
        while (i < n && d.is_zero(a[i][m - 1])) ++i;
        if (i == n) continue;
        if (i != m) {
            std::swap(a[i], a[m]);
            for (std::size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][m]);
        }
        E inv = d.inv(a[m][m - 1]);
        for (std::size_t r = m + 1; r < n; ++r) {
            if (d.is_zero(a[r][m - 1])) continue;
            E f = d.mul(a[r][m - 1], inv);
            for (std::size_t c = 0; c < n; ++c) a[r][c] = d.sub(a[r][c], d.mul(f, a[m][c]));
            for (std::size_t c = 0; c < n; ++c) a[c][m] = d.add(a[c][m], d.mul(f, a[c][r]));
        }
    }
    // p_k = charpoly of leading k x k block.
    std::vector<std::vector<E>> p(n + 1);
    p[0] = {d.one()};
    for (std::size_t k = 1; k <= n; ++k) {
        // x * p_{k-1} - a[k-1][k-1] * p_{k-1}
        std::vector<E> cur(k + 1, d.zero());
        for (std::size_t j = 0; j < p[k - 1].size(); ++j) {
            cur[j + 1] = d.add(cur[j + 1], p[k - 1][j]);
            cur[j] = d.sub(cur[j], d.mul(a[k - 1][k - 1], p[k - 1][j]));
        }
        E t = d.one();
        for (std::size_t i = 1; i < k; ++i) {
            t = d.mul(t, a[k - i][k - i - 1]);
            E coef = d.mul(t, a[k - i - 1][k - 1]);
            for (std::size_t j = 0; j < p[k - i - 1].size(); ++j) cur[j] = d.sub(cur[j], d.mul(coef, p[k - i - 1][j]));
        }
        p[k] = std::move(cur);
    }
    return p[n];
}

}  // namespace dolgachev
