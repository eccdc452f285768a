#pragma once
#include "qtor/rational.hpp"
#include <Eigen/Dense>
#include <vector>

namespace qtor {

using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

RatMat to_rational(const IntMat& a);
IntMat to_integer(const RatMat& a); // throws internal_error on non-integer entries

/* in-place reduced row echelon form, pivots in column order; returns pivot columns.
   deterministic: first nonzero entry scanning rows top-down is the pivot */
std::vector<Eigen::Index> rref(RatMat& a);

long rank_rational(const RatMat& a);

/* columns form a basis of {x : a x = 0}; deterministic via rref free columns */
RatMat real_kernel(const RatMat& a);

/* exact determinant by elimination */
Rational det_rational(const RatMat& a);
Int det_integer(const IntMat& a);

/* solve a x = b exactly; ok=false when inconsistent */
bool solve_rational(const RatMat& a, const RatMat& b, RatMat& x);

/* inverse of a matrix in GL(n,Z); throws invalid_input if not unimodular */
IntMat int_inverse_unimodular(const IntMat& a);

std::string format_matrix(const IntMat& a);
std::string format_matrix(const RatMat& a);

} // namespace qtor
