#pragma once

#include <ostream>
#include <string>

#include "dolgachev/arith/integer.hpp"

namespace dolgachev {

// a + b*w with w^2 = -7, i.e. w = i*sqrt(7). Written I7 in text.
struct QuadElem {
    Rational a, b;

    QuadElem() = default;
    QuadElem(long v) : a(v), b(0) {}  // NOLINT: implicit for literals
    QuadElem(Rational ra, Rational rb = 0) : a(std::move(ra)), b(std::move(rb)) {
        a.canonicalize();
        b.canonicalize();
    }
    static QuadElem omega() { return QuadElem(0, 1); }

    QuadElem operator+(const QuadElem& o) const { return {a + o.a, b + o.b}; }
    QuadElem operator-(const QuadElem& o) const { return {a - o.a, b - o.b}; }
    QuadElem operator-() const { return {-a, -b}; }
    QuadElem operator*(const QuadElem& o) const { return {a * o.a - 7 * b * o.b, a * o.b + b * o.a}; }
    QuadElem& operator+=(const QuadElem& o) { return *this = *this + o; }
    QuadElem& operator-=(const QuadElem& o) { return *this = *this - o; }
    QuadElem& operator*=(const QuadElem& o) { return *this = *this * o; }

    Rational norm() const { return a * a + 7 * b * b; }
    QuadElem conj() const { return {a, -b}; }
    QuadElem inverse() const {
        Rational n = norm();
        if (n == 0) throw std::domain_error("inverse of zero in Q(i*sqrt7)");
        return {a / n, -b / n};
    }
    QuadElem operator/(const QuadElem& o) const { return *this * o.inverse(); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    bool operator==(const QuadElem& o) const { return a == o.a && b == o.b; }

    // Common denominator c > 0 with a = A/c, b = B/c.
    Integer common_den() const { return lcm(a.get_den(), b.get_den()); }
};

// Literal syntax: integer, a/b, or (A+B*I7)/c with the sign folded into A, B.
inline std::string to_string(const QuadElem& x) {
    if (x.b == 0) return to_string(x.a);
    Integer c = x.common_den();
    Integer A = x.a.get_num() * (c / x.a.get_den());
    Integer B = x.b.get_num() * (c / x.b.get_den());
    std::string s = "(";
    if (A != 0) s += to_string(A) + (B < 0 ? "-" : "+");
    else if (B < 0) s += "-";
    Integer absB = abs(B);
    s += (absB == 1 ? std::string() : to_string(absB) + "*") + "I7)";
    if (c != 1) s += "/" + to_string(c);
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << to_string(x); }

}  // namespace dolgachev
