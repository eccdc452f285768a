#include "qtor/quat_matrix.hpp"
#include "qtor/errors.hpp"

namespace qtor {

QuatMatrix QuatMatrix::identity(Eigen::Index n) {
    QuatMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Quaternion(1);
    return m;
}

QuatMatrix QuatMatrix::zero(Eigen::Index r, Eigen::Index c) { return QuatMatrix(r, c); }

static void check_same_shape(const QuatMatrix& a, const QuatMatrix& b, const char* what) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw invalid_input(std::string("shape mismatch in quaternionic ") + what);
}

QuatMatrix operator+(const QuatMatrix& a, const QuatMatrix& b) {
    check_same_shape(a, b, "sum");
    QuatMatrix r(a.rows, a.cols);
    for (size_t t = 0; t < a.e.size(); ++t) r.e[t] = a.e[t] + b.e[t];
    return r;
}

QuatMatrix operator-(const QuatMatrix& a, const QuatMatrix& b) {
    check_same_shape(a, b, "difference");
    QuatMatrix r(a.rows, a.cols);
    for (size_t t = 0; t < a.e.size(); ++t) r.e[t] = a.e[t] - b.e[t];
    return r;
}

QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.cols != b.rows) throw invalid_input("shape mismatch in quaternionic product");
    QuatMatrix r(a.rows, b.cols);
    for (Eigen::Index i = 0; i < a.rows; ++i)
        for (Eigen::Index j = 0; j < b.cols; ++j) {
            Quaternion acc;
            for (Eigen::Index t = 0; t < a.cols; ++t)
                acc = acc + a(i, t) * b(t, j); // order matters
            r(i, j) = acc;
        }
    return r;
}

QuatMatrix conj_transpose(const QuatMatrix& a) {
    QuatMatrix r(a.cols, a.rows);
    for (Eigen::Index i = 0; i < a.rows; ++i)
        for (Eigen::Index j = 0; j < a.cols; ++j) r(j, i) = conj(a(i, j));
    return r;
}

QuatMatrix sympl_J() {
    QuatMatrix j(2, 2);
    j(0, 1) = Quaternion(1);
    j(1, 0) = Quaternion(-1);
    return j;
}

/* 4x4 block of left multiplication by q = a+bi+cj+dk in basis (1,i,j,k):
   columns are q*1, q*i, q*j, q*k */
static void put_block(RatMat& m, Eigen::Index r, Eigen::Index c, const Quaternion& q) {
    const Rational &a = q.re, &b = q.i, &cc = q.j, &d = q.k;
    m(r + 0, c + 0) = a;  m(r + 0, c + 1) = -b; m(r + 0, c + 2) = -cc; m(r + 0, c + 3) = -d;
    m(r + 1, c + 0) = b;  m(r + 1, c + 1) = a;  m(r + 1, c + 2) = -d;  m(r + 1, c + 3) = cc;
    m(r + 2, c + 0) = cc; m(r + 2, c + 1) = d;  m(r + 2, c + 2) = a;   m(r + 2, c + 3) = -b;
    m(r + 3, c + 0) = d;  m(r + 3, c + 1) = -cc; m(r + 3, c + 2) = b;  m(r + 3, c + 3) = a;
}

RatMat realify(const QuatMatrix& a) {
    RatMat m = RatMat::Zero(4 * a.rows, 4 * a.cols);
    for (Eigen::Index i = 0; i < a.rows; ++i)
        for (Eigen::Index j = 0; j < a.cols; ++j)
            put_block(m, 4 * i, 4 * j, a(i, j));
    return m;
}

QuatMatrix unrealify(const RatMat& r) {
    if (r.rows() % 4 || r.cols() % 4)
        throw internal_error("unrealify: dimensions not multiples of 4");
    QuatMatrix a(r.rows() / 4, r.cols() / 4);
    for (Eigen::Index i = 0; i < a.rows; ++i)
        for (Eigen::Index j = 0; j < a.cols; ++j)
            a(i, j) = Quaternion(r(4 * i, 4 * j), r(4 * i + 1, 4 * j),
                                 r(4 * i + 2, 4 * j), r(4 * i + 3, 4 * j));
    RatMat back = realify(a);
    if (back != r) throw internal_error("unrealify: matrix is not a realified quaternionic matrix");
    return a;
}

RatVec realify_vector(const std::vector<Quaternion>& v) {
    RatVec r = RatVec::Zero(4 * (Eigen::Index)v.size());
    for (size_t t = 0; t < v.size(); ++t) {
        r(4 * (Eigen::Index)t + 0) = v[t].re;
        r(4 * (Eigen::Index)t + 1) = v[t].i;
        r(4 * (Eigen::Index)t + 2) = v[t].j;
        r(4 * (Eigen::Index)t + 3) = v[t].k;
    }
    return r;
}

std::vector<Quaternion> unrealify_vector(const RatVec& v) {
    if (v.size() % 4) throw internal_error("unrealify_vector: size not a multiple of 4");
    std::vector<Quaternion> r(v.size() / 4);
    for (size_t t = 0; t < r.size(); ++t)
        r[t] = Quaternion(v(4 * (Eigen::Index)t), v(4 * (Eigen::Index)t + 1),
                          v(4 * (Eigen::Index)t + 2), v(4 * (Eigen::Index)t + 3));
    return r;
}

bool quat_invertible(const QuatMatrix& a) {
    if (a.rows != a.cols) return false;
    return det_rational(realify(a)) != 0;
}

QuatMatrix quat_inverse(const QuatMatrix& a) {
    if (a.rows != a.cols) throw invalid_input("inverse of a non-square quaternionic matrix");
    RatMat r = realify(a);
    RatMat id = RatMat::Zero(r.rows(), r.rows());
    for (Eigen::Index i = 0; i < r.rows(); ++i) id(i, i) = 1;
    RatMat x;
    if (!solve_rational(r, id, x) || rank_rational(r) != r.rows())
        throw invalid_input("singular quaternionic matrix");
    return unrealify(x);
}

/* rational fourth root, exact or nothing */
static bool fourth_root(const Rational& v, Rational& out) {
    if (v < 0) return false;
    mpz_class num_root, den_root;
    if (!mpz_root(num_root.get_mpz_t(), v.get_num().get_mpz_t(), 4)) return false;
    if (!mpz_root(den_root.get_mpz_t(), v.get_den().get_mpz_t(), 4)) return false;
    out = make_rational(num_root, den_root);
    return true;
}

Dieudonne dieudonne_det(const QuatMatrix& a) {
    if (a.rows != a.cols) throw invalid_input("Dieudonne determinant of a non-square matrix");
    Dieudonne d;
    d.det_realified = det_rational(realify(a));
    Rational root;
    if (fourth_root(d.det_realified, root)) {
        d.is_rational = true;
        d.value = root;
    } else {
        d.is_rational = false;
        d.value = 0;
    }
    return d;
}

bool is_quaternionic_symplectic(const QuatMatrix& c) {
    return is_quaternionic_symplectic(c, sympl_J());
}

bool is_quaternionic_symplectic(const QuatMatrix& c, const QuatMatrix& j) {
    if (c.rows != c.cols || j.rows != j.cols || c.rows != j.rows)
        throw invalid_input("symplectic test: size mismatch");
    return conj_transpose(c) * j * c == j;
}

Quaternion imaginary_pair_diagnostic(const std::vector<Quaternion>& v1,
                                     const std::vector<Quaternion>& v2) {
    if (v1.size() != v2.size()) throw invalid_input("pair diagnostic: size mismatch");
    Quaternion d1, d2;
    for (size_t t = 0; t < v1.size(); ++t) {
        d1 = d1 + v1[t] * conj(v2[t]);
        d2 = d2 + v2[t] * conj(v1[t]);
    }
    return d1 - d2;
}

} // namespace qtor
