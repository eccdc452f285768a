#pragma once
#include "qtor/rational.hpp"
#include <string>

namespace qtor {

/* quaternion with exact rational components in the basis (1, i, j, k) */
struct Quaternion {
    Rational re, i, j, k;

    Quaternion() : re(0), i(0), j(0), k(0) {}
    Quaternion(Rational w) : re(std::move(w)), i(0), j(0), k(0) {}
    Quaternion(Rational w, Rational x, Rational y, Rational z)
        : re(std::move(w)), i(std::move(x)), j(std::move(y)), k(std::move(z)) {}

    static Quaternion unit_i() { return Quaternion(0, 1, 0, 0); }
    static Quaternion unit_j() { return Quaternion(0, 0, 1, 0); }
    static Quaternion unit_k() { return Quaternion(0, 0, 0, 1); }

    bool is_zero() const { return re == 0 && i == 0 && j == 0 && k == 0; }
    bool is_real() const { return i == 0 && j == 0 && k == 0; }

    bool operator==(const Quaternion& o) const {
        return re == o.re && i == o.i && j == o.j && k == o.k;
    }
    bool operator!=(const Quaternion& o) const { return !(*this == o); }
};

Quaternion operator+(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a);
/* noncommutative: i*j = k, j*i = -k */
Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion operator*(const Rational& s, const Quaternion& a);

Quaternion conj(const Quaternion& a);
/* q * conj(q), a nonnegative rational */
Rational norm(const Quaternion& a);
Quaternion inverse(const Quaternion& a); // throws invalid_input on zero

std::string to_string(const Quaternion& a);

} // namespace qtor
