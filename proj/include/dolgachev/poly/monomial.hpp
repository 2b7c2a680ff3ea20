#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dolgachev/errors.hpp"

namespace dolgachev {

inline constexpr std::size_t kMaxVars = 32;

// Exponent vector over at most kMaxVars variables; unused slots are zero.
struct Monomial {
    std::array<std::uint8_t, kMaxVars> e{};
    std::uint16_t deg = 0;

    static Monomial var(std::size_t i, unsigned k = 1) {
        Monomial m;
        m.e[i] = static_cast<std::uint8_t>(k);
        m.deg = static_cast<std::uint16_t>(k);
        return m;
    }
    unsigned operator[](std::size_t i) const { return e[i]; }
    bool is_one() const { return deg == 0; }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            unsigned s = unsigned(e[i]) + o.e[i];
            if (s > 255) throw std::overflow_error("monomial exponent above 255");
            r.e[i] = static_cast<std::uint8_t>(s);
        }
        r.deg = static_cast<std::uint16_t>(deg + o.deg);
        return r;
    }
    bool divides(const Monomial& o) const {
        if (deg > o.deg) return false;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    // Precondition: divides(o).
    Monomial quotient_of(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(o.e[i] - e[i]);
        r.deg = static_cast<std::uint16_t>(o.deg - deg);
        return r;
    }
    Monomial lcm(const Monomial& o) const {
        Monomial r;
        unsigned d = 0;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            r.e[i] = std::max(e[i], o.e[i]);
            d += r.e[i];
        }
        r.deg = static_cast<std::uint16_t>(d);
        return r;
    }
    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] && o.e[i]) return false;
        return true;
    }
    bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t w[4];
        std::memcpy(w, m.e.data(), sizeof w);
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : w) h = (h ^ x) * 1099511628211ULL + (h >> 29);
        return static_cast<std::size_t>(h);
    }
};

struct TermOrder {
    enum class Kind { grevlex, lex, wgrevlex };
    Kind kind = Kind::grevlex;
    std::vector<int> weights;  // wgrevlex only

    static TermOrder grevlex() { return {}; }
    static TermOrder lex() { return {Kind::lex, {}}; }
    static TermOrder weighted(std::vector<int> w) { return {Kind::wgrevlex, std::move(w)}; }

    // Positive when a > b.
    int cmp(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case Kind::lex:
                for (std::size_t i = 0; i < kMaxVars; ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
                return 0;
            case Kind::wgrevlex: {
                long wa = 0, wb = 0;
                for (std::size_t i = 0; i < weights.size(); ++i) {
                    wa += long(weights[i]) * a.e[i];
                    wb += long(weights[i]) * b.e[i];
                }
                if (wa != wb) return wa > wb ? 1 : -1;
                [[fallthrough]];
            }
            case Kind::grevlex:
                if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
                for (std::size_t i = kMaxVars; i-- > 0;)
                    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
                return 0;
        }
        return 0;
    }
    bool operator==(const TermOrder&) const = default;
};

// Variable names plus term order. Shared by all polynomials of one ring.
class Ring {
public:
    Ring(std::vector<std::string> names, TermOrder order = TermOrder::grevlex())
        : names_(std::move(names)), order_(std::move(order)) {
        if (names_.size() > kMaxVars) throw std::invalid_argument("too many variables");
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable " + names_[i]);
    }
    std::size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const TermOrder& order() const { return order_; }
    int index(const std::string& n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return static_cast<int>(i);
        return -1;
    }
    std::size_t require(const std::string& n) const {
        int i = index(n);
        if (i < 0) throw std::invalid_argument("unknown variable " + n);
        return static_cast<std::size_t>(i);
    }
    int cmp(const Monomial& a, const Monomial& b) const { return order_.cmp(a, b); }
    bool same_as(const Ring& o) const { return names_ == o.names_ && order_ == o.order_; }

private:
    std::vector<std::string> names_;
    TermOrder order_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names, TermOrder order = TermOrder::grevlex()) {
    return std::make_shared<const Ring>(std::move(names), std::move(order));
}

inline std::string monomial_str(const Monomial& m, const Ring& R) {
    std::string s;
    for (std::size_t i = 0; i < R.nvars(); ++i) {
        if (!m.e[i]) continue;
        if (!s.empty()) s += "*";
        s += R.name(i);
        if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace dolgachev
