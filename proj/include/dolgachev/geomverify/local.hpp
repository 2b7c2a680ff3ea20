#pragma once

// Local analysis at a point: Jacobian rank and second-order classification.

#include <random>

#include "dolgachev/grobner/linalg.hpp"
#include "dolgachev/poly/ops.hpp"

namespace dolgachev {

enum class PointKind { smooth, node, worse };

inline const char* to_string(PointKind k) {
    switch (k) {
        case PointKind::smooth: return "smooth";
        case PointKind::node: return "node";
        default: return "worse";
    }
}

struct PointClass {
    PointKind kind = PointKind::smooth;
    std::size_t jacobian_rank = 0;
    std::size_t local_vars = 0;  // tangent-space dimension
    std::size_t quad_rank = 0;   // best rank of a quadratic part in the local model
};

template <class D>
Matrix<D> jacobian_at(const std::vector<Poly<D>>& eqs, const std::vector<typename D::Elem>& pt) {
    const std::size_t n = eqs.at(0).ring()->nvars();
    Matrix<D> J;
    for (auto& f : eqs) {
        std::vector<typename D::Elem> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(evaluate(derivative(f, j), pt));
        J.push_back(std::move(row));
    }
    return J;
}

template <class D>
std::size_t jacobian_rank_at_point(const std::vector<Poly<D>>& eqs, const std::vector<typename D::Elem>& pt) {
    return rank(eqs.at(0).dom(), jacobian_at(eqs, pt));
}

// Eliminate the directions along which the equations have independent
// differentials; on the tangent space the surviving equations (with linear
// parts cancelled) have quadratic parts z^T S^T H S z. Expected dimension dim.
template <class D>
PointClass classify_point(const std::vector<Poly<D>>& eqs, const std::vector<typename D::Elem>& pt, std::size_t dim,
                          std::uint64_t seed = 7) {
    using E = typename D::Elem;
    const D& d = eqs.at(0).dom();
    const std::size_t n = eqs[0].ring()->nvars();
    for (std::size_t i = 0; i < eqs.size(); ++i)
        if (!d.is_zero(evaluate(eqs[i], pt))) throw NotOnScheme("equation " + std::to_string(i + 1) + " does not vanish");
    Matrix<D> L = jacobian_at(eqs, pt);
    std::vector<Matrix<D>> H;
    for (auto& f : eqs) {
        Matrix<D> h(n, std::vector<E>(n, d.zero()));
        for (std::size_t j = 0; j < n; ++j) {
            Poly<D> fj = derivative(f, j);
            for (std::size_t k = j; k < n; ++k) h[j][k] = h[k][j] = evaluate(derivative(fj, k), pt);
        }
        H.push_back(std::move(h));
    }
    PointClass out;
    // independent rows of L: pivot columns of L^T
    Matrix<D> LT = transpose<D>(L);
    std::vector<std::size_t> rows = rref(d, LT);
    out.jacobian_rank = rows.size();
    auto S = kernel(d, L, n);  // tangent vectors
    out.local_vars = S.size();
    if (out.local_vars <= dim) return out;

    Matrix<D> B;  // chosen rows, transposed: columns are L_i
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<E> col;
        for (auto i : rows) col.push_back(L[i][j]);
        B.push_back(col);
    }
    auto restrict_quad = [&](const Matrix<D>& h) {
        const std::size_t m = S.size();
        Matrix<D> M(m, std::vector<E>(m, d.zero()));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                E acc = d.zero();
                for (std::size_t j = 0; j < n; ++j) {
                    if (d.is_zero(S[a][j])) continue;
                    E inner = d.zero();
                    for (std::size_t k = 0; k < n; ++k) inner = d.add(inner, d.mul(h[j][k], S[b][k]));
                    acc = d.add(acc, d.mul(S[a][j], inner));
                }
                M[a][b] = acc;
            }
        return M;
    };
    std::vector<Matrix<D>> quads;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
        Matrix<D> h = H[i];
        if (!rows.empty()) {
            auto c = solve_linear(d, B, L[i]);
            if (!c) throw std::logic_error("classify_point: dependent row not in span");
            for (std::size_t t = 0; t < rows.size(); ++t)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) h[j][k] = d.sub(h[j][k], d.mul((*c)[t], H[rows[t]][j][k]));
        }
        quads.push_back(restrict_quad(h));
    }
    std::mt19937_64 rng(seed);
    for (auto& q : quads) out.quad_rank = std::max(out.quad_rank, rank(d, q));
    if (!quads.empty()) {
        Matrix<D> mix(S.size(), std::vector<E>(S.size(), d.zero()));
        for (auto& q : quads) {
            E c = d.from_int(static_cast<long>(rng() % 1000003));
            for (std::size_t a = 0; a < S.size(); ++a)
                for (std::size_t b = 0; b < S.size(); ++b) mix[a][b] = d.add(mix[a][b], d.mul(c, q[a][b]));
        }
        out.quad_rank = std::max(out.quad_rank, rank(d, mix));
    }
    out.kind = out.local_vars == dim + 1 && out.quad_rank == out.local_vars ? PointKind::node : PointKind::worse;
    return out;
}

}  // namespace dolgachev
