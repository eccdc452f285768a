#pragma once
#include "qtor/quaternion.hpp"
#include "qtor/matrix.hpp"
#include <vector>

namespace qtor {

/* dense quaternionic matrix, row-major; H^m is a right H-module and matrices
   act on the left, so entry products are taken left-to-right as written */
struct QuatMatrix {
    Eigen::Index rows = 0, cols = 0;
    std::vector<Quaternion> e;

    QuatMatrix() = default;
    QuatMatrix(Eigen::Index r, Eigen::Index c) : rows(r), cols(c), e(r * c) {}

    Quaternion& operator()(Eigen::Index r, Eigen::Index c) { return e[r * cols + c]; }
    const Quaternion& operator()(Eigen::Index r, Eigen::Index c) const { return e[r * cols + c]; }

    static QuatMatrix identity(Eigen::Index n);
    static QuatMatrix zero(Eigen::Index r, Eigen::Index c);

    bool operator==(const QuatMatrix& o) const {
        return rows == o.rows && cols == o.cols && e == o.e;
    }
};

QuatMatrix operator+(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix operator-(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix conj_transpose(const QuatMatrix& a);

/* the 2x2 symplectic reference matrix [[0,1],[-1,0]] */
QuatMatrix sympl_J();

/* 4m x 4n real matrix of left multiplication by A on the right module H^n,
   basis (1, i, j, k) per coordinate */
RatMat realify(const QuatMatrix& a);

/* inverse of realify; throws internal_error if the block structure is not a
   realified quaternionic matrix */
QuatMatrix unrealify(const RatMat& r);

/* realified column vector of h in basis (1,i,j,k) per coordinate */
RatVec realify_vector(const std::vector<Quaternion>& v);
std::vector<Quaternion> unrealify_vector(const RatVec& v);

bool quat_invertible(const QuatMatrix& a);
QuatMatrix quat_inverse(const QuatMatrix& a); // throws invalid_input when singular

struct Dieudonne {
    bool is_rational;       // fourth root of det(realify) is rational
    Rational value;         // the nonnegative root when is_rational
    Rational det_realified; // always carried; the flag payload otherwise
};
Dieudonne dieudonne_det(const QuatMatrix& a); // throws invalid_input on non-square

bool is_quaternionic_symplectic(const QuatMatrix& c);
bool is_quaternionic_symplectic(const QuatMatrix& c, const QuatMatrix& j);

/* v1*conj(v2) - v2*conj(v1) for a pair of H^2 columns; purely imaginary
   diagnostic, kept separate from the Dieudonne determinant */
Quaternion imaginary_pair_diagnostic(const std::vector<Quaternion>& v1,
                                     const std::vector<Quaternion>& v2);

} // namespace qtor
