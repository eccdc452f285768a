#include "qtor/quaternion.hpp"
#include "qtor/errors.hpp"
#include <sstream>

namespace qtor {

Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.re + b.re, a.i + b.i, a.j + b.j, a.k + b.k};
}

Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.re - b.re, a.i - b.i, a.j - b.j, a.k - b.k};
}

Quaternion operator-(const Quaternion& a) { return {-a.re, -a.i, -a.j, -a.k}; }

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    /* i^2 = j^2 = k^2 = ijk = -1 */
    return {a.re * b.re - a.i * b.i - a.j * b.j - a.k * b.k,
            a.re * b.i + a.i * b.re + a.j * b.k - a.k * b.j,
            a.re * b.j - a.i * b.k + a.j * b.re + a.k * b.i,
            a.re * b.k + a.i * b.j - a.j * b.i + a.k * b.re};
}

Quaternion operator*(const Rational& s, const Quaternion& a) {
    return {s * a.re, s * a.i, s * a.j, s * a.k};
}

Quaternion conj(const Quaternion& a) { return {a.re, -a.i, -a.j, -a.k}; }

Rational norm(const Quaternion& a) {
    return a.re * a.re + a.i * a.i + a.j * a.j + a.k * a.k;
}

Quaternion inverse(const Quaternion& a) {
    Rational n = norm(a);
    if (n == 0) throw invalid_input("inverse of the zero quaternion");
    Rational s = 1 / n;
    return s * conj(a);
}

std::string to_string(const Quaternion& a) {
    std::ostringstream os;
    os << "(" << to_string(a.re) << ", " << to_string(a.i) << ", "
       << to_string(a.j) << ", " << to_string(a.k) << ")";
    return os.str();
}

} // namespace qtor
