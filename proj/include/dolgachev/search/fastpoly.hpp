#pragma once

// Fixed-width evaluation of polynomials mod p < 2^31 for the scan hot loop.

#include <cstdint>
#include <vector>

#include "dolgachev/poly/poly.hpp"

namespace dolgachev {

class FastPoly {
public:
    FastPoly() = default;

    // f over F_p with variables drawn from the ring order of f; var_map[i] gives
    // the tuple slot feeding variable i of f's ring.
    FastPoly(const Poly<Fp>& f, const std::vector<std::size_t>& var_map) : p_(f.dom().p) {
        const std::size_t n = f.ring()->nvars();
        slots_ = var_map;
        maxdeg_.assign(n, 0);
        for (auto& t : f.terms()) {
            Term tt;
            tt.c = t.c;
            for (std::size_t i = 0; i < n; ++i)
                if (t.m.e[i]) {
                    tt.vars.push_back({static_cast<std::uint32_t>(i), t.m.e[i]});
                    maxdeg_[i] = std::max<unsigned>(maxdeg_[i], t.m.e[i]);
                }
            terms_.push_back(std::move(tt));
        }
        univariate_ = n == 1;
        if (univariate_) {
            dense_.assign(maxdeg_[0] + 1, 0);
            for (auto& t : f.terms()) dense_[t.m.e[0]] = t.c;
        }
        pw_.resize(n);
    }

    std::uint64_t p() const { return p_; }

    std::uint64_t operator()(const std::vector<std::uint64_t>& tuple) const {
        if (univariate_) return horner(tuple[slots_[0]]);
        for (std::size_t i = 0; i < pw_.size(); ++i) {
            auto& v = pw_[i];
            v.resize(maxdeg_[i] + 1);
            v[0] = 1;
            std::uint64_t x = tuple[slots_[i]] % p_;
            for (unsigned k = 1; k <= maxdeg_[i]; ++k) v[k] = v[k - 1] * x % p_;
        }
        std::uint64_t acc = 0;
        for (auto& t : terms_) {
            std::uint64_t v = t.c;
            for (auto& [i, e] : t.vars) v = v * pw_[i][e] % p_;
            acc += v;
            if (acc >= p_) acc -= p_;
        }
        return acc;
    }

    std::uint64_t horner(std::uint64_t x) const {
        std::uint64_t acc = 0;
        for (std::size_t i = dense_.size(); i-- > 0;) acc = (acc * x + dense_[i]) % p_;
        return acc;
    }

private:
    struct Term {
        std::uint64_t c = 0;
        std::vector<std::pair<std::uint32_t, unsigned>> vars;
    };
    std::uint64_t p_ = 2;
    std::vector<std::size_t> slots_;
    std::vector<unsigned> maxdeg_;
    std::vector<Term> terms_;
    bool univariate_ = false;
    std::vector<std::uint64_t> dense_;
    mutable std::vector<std::vector<std::uint64_t>> pw_;  // scratch; one FastPoly per thread
};

}  // namespace dolgachev
