#pragma once

#include <cstdint>
#include <string>

#include "dolgachev/arith/fp.hpp"
#include "dolgachev/arith/quad.hpp"

namespace dolgachev {

enum class Branch { plus, minus };

inline const char* to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

inline Branch parse_branch(const std::string& s) {
    if (s == "plus") return Branch::plus;
    if (s == "minus") return Branch::minus;
    throw ConfigError("branch must be plus or minus, got '" + s + "'");
}

// A residue mod p^K.
class PadicApprox {
public:
    PadicApprox() = default;
    PadicApprox(const Integer& v, std::uint64_t p, unsigned K)
        : p_(p), K_(K), modulus_(ipow(from_u64(p), K)), value_(mod(v, modulus_)) {}

    const Integer& value() const { return value_; }
    const Integer& modulus() const { return modulus_; }
    std::uint64_t p() const { return p_; }
    unsigned K() const { return K_; }

    PadicApprox reduce(unsigned K2) const {
        if (K2 > K_) throw std::invalid_argument("cannot raise precision by reduction");
        return PadicApprox(value_, p_, K2);
    }

    PadicApprox operator+(const PadicApprox& o) const { check(o); return {value_ + o.value_, p_, K_}; }
    PadicApprox operator-(const PadicApprox& o) const { check(o); return {value_ - o.value_, p_, K_}; }
    PadicApprox operator*(const PadicApprox& o) const { check(o); return {value_ * o.value_, p_, K_}; }
    PadicApprox inverse() const { return {invmod(value_, modulus_), p_, K_}; }
    bool operator==(const PadicApprox& o) const { return p_ == o.p_ && K_ == o.K_ && value_ == o.value_; }

private:
    void check(const PadicApprox& o) const {
        if (p_ != o.p_ || K_ != o.K_) throw DomainMismatch("p-adic precision or prime differ");
    }
    std::uint64_t p_ = 0;
    unsigned K_ = 0;
    Integer modulus_ = 1;
    Integer value_ = 0;
};

// Root of x^2 + 7 mod p^K on the requested branch: plus lifts the canonical
// square root of -7 mod p, minus lifts its negative.
inline Integer sqrt_minus7_lift(std::uint64_t p, unsigned K, Branch br) {
    if (p == 2 || p == 7) throw NonResidue("p must be odd and prime to 7");
    std::uint64_t r0 = modp::sqrt(modp::from_int(-7, p), p);
    if (br == Branch::minus) r0 = (p - r0) % p;
    Integer P = from_u64(p), r = from_u64(r0), m = P;
    unsigned prec = 1;
    Integer N = ipow(P, K);
    while (prec < K) {
        prec = std::min(2 * prec, K);
        m = ipow(P, prec);
        // Newton: r <- r - (r^2+7)/(2r)
        r = mod(r - (r * r + 7) * invmod(2 * r, m), m);
    }
    return mod(r, N);
}

inline PadicApprox embed_quad(const QuadElem& x, std::uint64_t p, unsigned K, Branch br) {
    Integer r = sqrt_minus7_lift(p, K, br);
    Integer N = ipow(from_u64(p), K);
    if (mod(x.a.get_den(), from_u64(p)) == 0 || mod(x.b.get_den(), from_u64(p)) == 0)
        throw DenominatorDivisibleByP(to_string(x) + " at p=" + std::to_string(p));
    return PadicApprox(rat_mod(x.a, N) + rat_mod(x.b, N) * r, p, K);
}

inline std::uint64_t embed_quad_fp(const QuadElem& x, std::uint64_t p, Branch br) {
    return to_u64(embed_quad(x, p, 1, br).value());
}

}  // namespace dolgachev
