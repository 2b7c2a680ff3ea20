#pragma once

// Coefficient domains. A domain is a small value object that owns the
// parameters of the ring (modulus, non-residue) and implements arithmetic on
// a plain Elem type; containers hold one domain and many Elems.

#include <compare>
#include <cstdint>
#include <string>

#include "dolgachev/arith/fp.hpp"
#include "dolgachev/arith/padic.hpp"
#include "dolgachev/arith/quad.hpp"

namespace dolgachev {

struct QQ {
    using Elem = Rational;
    static constexpr bool is_field = true;
    static constexpr bool is_finite = false;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long v) const { return v; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const { return 1 / a; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string str(const Elem& a) const { return to_string(a); }
    std::string name() const { return "QQ"; }
    bool operator==(const QQ&) const = default;
};

struct QI7 {
    using Elem = QuadElem;
    static constexpr bool is_field = true;
    static constexpr bool is_finite = false;
    Elem zero() const { return 0L; }
    Elem one() const { return 1L; }
    Elem from_int(long v) const { return v; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const { return a.inverse(); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string str(const Elem& a) const { return to_string(a); }
    std::string name() const { return "QQ(I7)"; }
    bool operator==(const QI7&) const = default;
};

struct Fp {
    using Elem = std::uint64_t;
    static constexpr bool is_field = true;
    static constexpr bool is_finite = true;
    std::uint64_t p = 0;

    Fp() = default;
    explicit Fp(std::uint64_t prime) : p(prime) {
        if (prime < 2 || prime >= (1ULL << 31)) throw std::invalid_argument("prime out of range");
    }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long v) const { return modp::from_int(v, p); }
    Elem from_integer(const Integer& z) const { return modp::from_integer(z, p); }
    Elem from_rational(const Rational& q) const {
        Integer P = from_u64(p);
        return to_u64(rat_mod(q, P));
    }
    Elem from_quad(const QuadElem& x, Branch br) const {
        return x.is_rational() ? from_rational(x.a) : embed_quad_fp(x, p, br);
    }
    Elem add(Elem a, Elem b) const { return modp::add(a, b, p); }
    Elem sub(Elem a, Elem b) const { return modp::sub(a, b, p); }
    Elem neg(Elem a) const { return a ? p - a : 0; }
    Elem mul(Elem a, Elem b) const { return a * b % p; }
    Elem inv(Elem a) const { return modp::inv(a, p); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    std::string str(Elem a) const { return std::to_string(a); }
    std::string name() const { return "GF(" + std::to_string(p) + ")"; }
    std::uint64_t order() const { return p; }
    bool operator==(const Fp&) const = default;
};

// F_p[x]/(x^2 - n) with n the least non-residue.
struct Fp2Elem {
    std::uint64_t a = 0, b = 0;
    bool operator==(const Fp2Elem&) const = default;
    auto operator<=>(const Fp2Elem&) const = default;
};

struct Fp2 {
    using Elem = Fp2Elem;
    static constexpr bool is_field = true;
    static constexpr bool is_finite = true;
    std::uint64_t p = 0, n = 0;

    Fp2() = default;
    explicit Fp2(std::uint64_t prime) : p(prime), n(modp::nonresidue(prime)) {}
    Elem zero() const { return {}; }
    Elem one() const { return {1, 0}; }
    Elem from_int(long v) const { return {modp::from_int(v, p), 0}; }
    Elem from_base(std::uint64_t v) const { return {v % p, 0}; }
    Elem gen() const { return {0, 1}; }
    Elem add(Elem x, Elem y) const { return {modp::add(x.a, y.a, p), modp::add(x.b, y.b, p)}; }
    Elem sub(Elem x, Elem y) const { return {modp::sub(x.a, y.a, p), modp::sub(x.b, y.b, p)}; }
    Elem neg(Elem x) const { return {x.a ? p - x.a : 0, x.b ? p - x.b : 0}; }
    Elem mul(Elem x, Elem y) const {
        std::uint64_t ac = x.a * y.a % p, bd = x.b * y.b % p;
        return {(ac + bd * n) % p, (x.a * y.b + x.b * y.a) % p};
    }
    Elem inv(Elem x) const {
        // (a + b x)^-1 = (a - b x) / (a^2 - n b^2)
        std::uint64_t den = modp::sub(x.a * x.a % p, n * (x.b * x.b % p) % p, p);
        std::uint64_t di = modp::inv(den, p);
        return {x.a * di % p, (x.b ? p - x.b : 0) * di % p};
    }
    bool is_zero(Elem x) const { return x.a == 0 && x.b == 0; }
    bool eq(Elem x, Elem y) const { return x == y; }
    std::string str(Elem x) const {
        if (x.b == 0) return std::to_string(x.a);
        return "(" + std::to_string(x.a) + "+" + std::to_string(x.b) + "*z)";
    }
    std::string name() const { return "GF(" + std::to_string(p) + "^2)"; }
    std::uint64_t order() const { return p * p; }
    bool in_base(Elem x) const { return x.b == 0; }
    bool operator==(const Fp2&) const = default;
};

// Z / m, not a field in general; inv throws on non-units.
struct Zmod {
    using Elem = Integer;
    static constexpr bool is_field = false;
    static constexpr bool is_finite = true;
    Integer m = 1;

    Zmod() = default;
    explicit Zmod(Integer modulus) : m(std::move(modulus)) {}
    Elem zero() const { return 0; }
    Elem one() const { return mod(Integer(1), m); }
    Elem from_int(long v) const { return mod(Integer(v), m); }
    Elem from_integer(const Integer& z) const { return mod(z, m); }
    Elem from_rational(const Rational& q) const { return rat_mod(q, m); }
    Elem add(const Elem& a, const Elem& b) const { return mod(a + b, m); }
    Elem sub(const Elem& a, const Elem& b) const { return mod(a - b, m); }
    Elem neg(const Elem& a) const { return mod(-a, m); }
    Elem mul(const Elem& a, const Elem& b) const { return mod(a * b, m); }
    Elem inv(const Elem& a) const { return invmod(a, m); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string str(const Elem& a) const { return to_string(a); }
    std::string name() const { return "ZZ/" + to_string(m); }
    bool operator==(const Zmod& o) const { return m == o.m; }
};

template <class D>
typename D::Elem dom_pow(const D& d, typename D::Elem a, std::uint64_t e) {
    typename D::Elem r = d.one();
    while (e) {
        if (e & 1) r = d.mul(r, a);
        a = d.mul(a, a);
        e >>= 1;
    }
    return r;
}

}  // namespace dolgachev
