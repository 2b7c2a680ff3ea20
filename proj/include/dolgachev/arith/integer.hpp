#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "dolgachev/errors.hpp"

namespace dolgachev {

// GMP keeps both types canonical: no leading zero limbs, rationals reduced
// with positive denominator (after canonicalize(), which every helper here
// performs).
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer int_from_string(const std::string& s) {
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0) throw ParseError("bad integer '" + s + "'");
    return z;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Integer& z) { return z.get_str(10); }

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str(10);
    return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

inline Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Least non-negative residue.
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer powmod(const Integer& b, const Integer& e, const Integer& m) {
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Throws DenominatorDivisibleByP when a is not a unit mod m.
inline Integer invmod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DenominatorDivisibleByP("no inverse of " + to_string(a) + " mod " + to_string(m));
    return r;
}

// Image of a rational in Z/m.
inline Integer rat_mod(const Rational& q, const Integer& m) {
    return mod(q.get_num() * invmod(q.get_den(), m), m);
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline std::uint64_t to_u64(const Integer& z) {
    if (z < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64) throw std::overflow_error("does not fit in u64");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof out, 0, 0, z.get_mpz_t());
    return out;
}

inline Integer from_u64(std::uint64_t v) {
    Integer z;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return z;
}

inline bool is_probable_prime(std::uint64_t p) {
    return mpz_probab_prime_p(from_u64(p).get_mpz_t(), 30) > 0;
}

}  // namespace dolgachev
