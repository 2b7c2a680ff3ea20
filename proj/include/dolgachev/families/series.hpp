#pragma once

// Bigraded Hilbert series of a free module over a weighted polynomial ring.
// Index convention: coefficient of s^b t^a sits at [b][a] (b = S-count, a = F-weight).

#include <functional>
#include <string>
#include <vector>

#include "dolgachev/poly/ops.hpp"

namespace dolgachev {

using BiSeries = std::vector<std::vector<long>>;

struct GradedSeries {
    BiSeries counts;     // combinatorial count
    BiSeries expansion;  // closed form expanded
    std::string closed_form;

    long at(int a, int b) const { return counts.at(static_cast<std::size_t>(b)).at(static_cast<std::size_t>(a)); }
};

inline std::string monomial_st(int b, int a) {
    std::string s;
    auto pw = [](const char* v, int e) { return e == 0 ? std::string() : e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e); };
    std::string ps = pw("s", b), pt = pw("t", a);
    if (!ps.empty()) s = ps;
    if (!pt.empty()) s += (s.empty() ? "" : "*") + pt;
    return s.empty() ? "1" : s;
}

// Number of (generator, base monomial) pairs in each bidegree up to (A, B).
inline BiSeries count_module_monomials(const std::vector<Bidegree>& gens, const std::vector<Bidegree>& base, int A,
                                       int B) {
    for (auto& w : base)
        if (w.first < 0 || w.second < 0 || (w.first == 0 && w.second == 0))
            throw std::invalid_argument("base weights must be nonnegative and nonzero");
    BiSeries ring(static_cast<std::size_t>(B + 1), std::vector<long>(static_cast<std::size_t>(A + 1), 0));
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int b, int a) {
        if (i == base.size()) {
            ++ring[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
            return;
        }
        for (int k = 0;; ++k) {
            int bb = b + k * base[i].first, aa = a + k * base[i].second;
            if (bb > B || aa > A) break;
            rec(i + 1, bb, aa);
        }
    };
    rec(0, 0, 0);
    BiSeries out(static_cast<std::size_t>(B + 1), std::vector<long>(static_cast<std::size_t>(A + 1), 0));
    for (auto& g : gens)
        for (int b = g.first; b <= B; ++b)
            for (int a = g.second; a <= A; ++a)
                out[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] +=
                    ring[static_cast<std::size_t>(b - g.first)][static_cast<std::size_t>(a - g.second)];
    return out;
}

// Expansion of N(s,t) / prod (1 - s^wb t^wa) up to (A, B).
inline BiSeries expand_rational(const BiSeries& numerator, const std::vector<Bidegree>& base, int A, int B) {
    BiSeries cur(static_cast<std::size_t>(B + 1), std::vector<long>(static_cast<std::size_t>(A + 1), 0));
    for (std::size_t b = 0; b < numerator.size() && b <= static_cast<std::size_t>(B); ++b)
        for (std::size_t a = 0; a < numerator[b].size() && a <= static_cast<std::size_t>(A); ++a) cur[b][a] = numerator[b][a];
    for (auto& w : base) {
        // multiply by 1/(1 - x^w): c[b][a] += c[b-wb][a-wa], increasing order
        for (int b = w.first; b <= B; ++b)
            for (int a = w.second; a <= A; ++a)
                cur[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] +=
                    cur[static_cast<std::size_t>(b - w.first)][static_cast<std::size_t>(a - w.second)];
    }
    return cur;
}

inline GradedSeries graded_series(const std::vector<Bidegree>& gens, const std::vector<Bidegree>& base, int A, int B) {
    GradedSeries gs;
    gs.counts = count_module_monomials(gens, base, A, B);
    int nb = 0, na = 0;
    for (auto& g : gens) nb = std::max(nb, g.first), na = std::max(na, g.second);
    BiSeries num(static_cast<std::size_t>(nb + 1), std::vector<long>(static_cast<std::size_t>(na + 1), 0));
    for (auto& g : gens) ++num[static_cast<std::size_t>(g.first)][static_cast<std::size_t>(g.second)];
    gs.expansion = expand_rational(num, base, A, B);
    std::string n;
    for (std::size_t b = 0; b < num.size(); ++b)
        for (std::size_t a = 0; a < num[b].size(); ++a) {
            if (!num[b][a]) continue;
            if (!n.empty()) n += " + ";
            std::string m = monomial_st(static_cast<int>(b), static_cast<int>(a));
            n += num[b][a] == 1 ? m : std::to_string(num[b][a]) + (m == "1" ? "" : "*" + m);
        }
    std::string den;
    for (auto& w : base) den += (den.empty() ? "(1 - " : "*(1 - ") + monomial_st(w.first, w.second) + ")";
    gs.closed_form = "(" + n + ")/" + (base.size() == 1 ? den : "(" + den + ")");
    return gs;
}

}  // namespace dolgachev
