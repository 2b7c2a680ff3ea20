#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "dolgachev/arith/integer.hpp"

namespace dolgachev {

// Plain-form residues; p < 2^32 keeps products inside 64 bits.
namespace modp {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("not invertible mod " + std::to_string(p));
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

inline std::uint64_t from_int(std::int64_t v, std::uint64_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

inline std::uint64_t from_integer(const Integer& z, std::uint64_t p) { return to_u64(mod(z, from_u64(p))); }

// Legendre symbol via Euler's criterion: 1, p-1 or 0.
inline std::uint64_t legendre(std::uint64_t a, std::uint64_t p) { return pow(a, (p - 1) / 2, p); }

// Tonelli-Shanks; returns the root in [0, p/2).
inline std::uint64_t sqrt(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (legendre(a, p) != 1) throw NonResidue(std::to_string(a) + " mod " + std::to_string(p));
    std::uint64_t q = p - 1, s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (legendre(z, p) != p - 1) ++z;
    std::uint64_t m = s, c = pow(z, q, p), t = pow(a, q, p), r = pow(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return 2 * r < p ? r : p - r;
}

// Smallest quadratic non-residue, used to build F_{p^2}.
inline std::uint64_t nonresidue(std::uint64_t p) {
    std::uint64_t z = 2;
    while (legendre(z, p) != p - 1) ++z;
    return z;
}

}  // namespace modp

// Value type for an element of F_p. Operations between different moduli throw.
struct FpElem {
    std::uint64_t value = 0;
    std::uint64_t p = 0;

    FpElem() = default;
    FpElem(std::int64_t v, std::uint64_t prime) : value(modp::from_int(v, prime)), p(prime) {}
    static FpElem raw(std::uint64_t v, std::uint64_t prime) {
        FpElem e;
        e.value = v;
        e.p = prime;
        return e;
    }

    void check(const FpElem& o) const {
        if (p != o.p) throw DomainMismatch("F_" + std::to_string(p) + " vs F_" + std::to_string(o.p));
    }
    FpElem operator+(const FpElem& o) const { check(o); return raw(modp::add(value, o.value, p), p); }
    FpElem operator-(const FpElem& o) const { check(o); return raw(modp::sub(value, o.value, p), p); }
    FpElem operator*(const FpElem& o) const { check(o); return raw(modp::mul(value, o.value, p), p); }
    FpElem operator-() const { return raw(value ? p - value : 0, p); }
    FpElem inverse() const {
        if (value == 0) throw std::domain_error("inverse of zero");
        return raw(modp::inv(value, p), p);
    }
    FpElem operator/(const FpElem& o) const { return *this * o.inverse(); }
    FpElem pow(std::uint64_t e) const { return raw(modp::pow(value, e, p), p); }
    bool operator==(const FpElem& o) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const FpElem& e) { return os << e.value << " (mod " << e.p << ")"; }

inline FpElem sqrt_mod_p(const FpElem& a) { return FpElem::raw(modp::sqrt(a.value, a.p), a.p); }

}  // namespace dolgachev
