#include "qtor/matrix.hpp"
#include "qtor/errors.hpp"
#include <sstream>

namespace qtor {

RatMat to_rational(const IntMat& a) {
    RatMat r(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r(i, j) = Rational(a(i, j));
    return r;
}

IntMat to_integer(const RatMat& a) {
    IntMat r(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (!is_integer(a(i, j)))
                throw internal_error("non-integer entry where an integer was forced: " +
                                     to_string(a(i, j)));
            r(i, j) = a(i, j).get_num();
        }
    return r;
}

std::vector<Eigen::Index> rref(RatMat& a) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = row; r < a.rows(); ++r)
            if (a(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row) a.row(piv).swap(a.row(row));
        Rational inv = 1 / a(row, col);
        for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, col) == 0) continue;
            Rational f = a(r, col);
            for (Eigen::Index j = col; j < a.cols(); ++j) a(r, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

long rank_rational(const RatMat& a) {
    RatMat w = a;
    return (long)rref(w).size();
}

RatMat real_kernel(const RatMat& a) {
    RatMat w = a;
    std::vector<Eigen::Index> pivots = rref(w);
    std::vector<bool> is_pivot(a.cols(), false);
    for (Eigen::Index p : pivots) is_pivot[p] = true;

    Eigen::Index dim = a.cols() - (Eigen::Index)pivots.size();
    RatMat basis = RatMat::Zero(a.cols(), dim);
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        if (is_pivot[j]) continue;
        basis(j, col) = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            basis(pivots[r], col) = -w((Eigen::Index)r, j);
        ++col;
    }
    return basis;
}

Rational det_rational(const RatMat& a) {
    if (a.rows() != a.cols()) throw invalid_input("determinant of a non-square matrix");
    RatMat w = a;
    Rational det = 1;
    for (Eigen::Index col = 0; col < w.cols(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = col; r < w.rows(); ++r)
            if (w(r, col) != 0) { piv = r; break; }
        if (piv < 0) return Rational(0);
        if (piv != col) { w.row(piv).swap(w.row(col)); det = -det; }
        det *= w(col, col);
        Rational inv = 1 / w(col, col);
        for (Eigen::Index r = col + 1; r < w.rows(); ++r) {
            if (w(r, col) == 0) continue;
            Rational f = w(r, col) * inv;
            for (Eigen::Index j = col; j < w.cols(); ++j) w(r, j) -= f * w(col, j);
        }
    }
    return det;
}

Int det_integer(const IntMat& a) {
    Rational d = det_rational(to_rational(a));
    if (!is_integer(d)) throw internal_error("integer determinant came out fractional");
    return d.get_num();
}

bool solve_rational(const RatMat& a, const RatMat& b, RatMat& x) {
    if (a.rows() != b.rows()) throw invalid_input("solve: row mismatch");
    RatMat aug(a.rows(), a.cols() + b.cols());
    aug.leftCols(a.cols()) = a;
    aug.rightCols(b.cols()) = b;
    std::vector<Eigen::Index> pivots = rref(aug);
    /* inconsistent if any pivot lands in the b block */
    for (Eigen::Index p : pivots)
        if (p >= a.cols()) return false;
    x = RatMat::Zero(a.cols(), b.cols());
    for (size_t r = 0; r < pivots.size(); ++r)
        x.row(pivots[r]) = aug.block((Eigen::Index)r, a.cols(), 1, b.cols());
    return true;
}

IntMat int_inverse_unimodular(const IntMat& a) {
    if (a.rows() != a.cols()) throw invalid_input("inverse of a non-square matrix");
    Int d = det_integer(a);
    if (d != 1 && d != -1)
        throw invalid_input("matrix is not unimodular (det " + to_string(d) + ")");
    RatMat x;
    RatMat id = RatMat::Zero(a.rows(), a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) id(i, i) = 1;
    if (!solve_rational(to_rational(a), id, x))
        throw internal_error("unimodular matrix failed to invert");
    return to_integer(x);
}

template <typename M>
static std::string format_impl(const M& a) {
    std::ostringstream os;
    os << "[";
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        os << (i ? "; " : "");
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            os << (j ? " " : "") << to_string(a(i, j));
    }
    os << "]";
    return os.str();
}

std::string format_matrix(const IntMat& a) { return format_impl(a); }
std::string format_matrix(const RatMat& a) { return format_impl(a); }

} // namespace qtor
