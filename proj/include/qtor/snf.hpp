#pragma once
#include "qtor/matrix.hpp"
#include <string>
#include <vector>

namespace qtor {

/* U * A * V = D, U and V unimodular, D diagonal with d1 | d2 | ... */
struct SNF {
    IntMat U, D, V;
    long rank = 0;
    std::vector<Int> divisors; // the nonzero d_i, in chain order
};

/* pivot rule: smallest nonzero absolute value, ties broken by lowest row
   index then lowest column index (deterministic outputs) */
SNF smith_normal_form(const IntMat& a);

/* finitely generated abelian group in divisor-chain normal form */
struct AbelianGroup {
    long free_rank = 0;
    std::vector<Int> torsion; // each > 1, each dividing the next

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const AbelianGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    std::string to_string() const; // "Z^2 + Z/2 + Z/6", "0", ...
};

/* Z^ambient modulo the column span of gens (ambient x k) */
AbelianGroup quotient_group(long ambient, const IntMat& gens);

/* columns form a saturated basis of {x in Z^cols : a x = 0} */
IntMat kernel_lattice(const IntMat& a);

/* integral solve a x = b; every rational solution is integral when the column
   lattice of a is saturated; ok=false when no rational solution exists and
   throws internal_error when a rational solution exists but is not integral */
bool solve_integral(const IntMat& a, const IntMat& b, IntMat& x);

} // namespace qtor
