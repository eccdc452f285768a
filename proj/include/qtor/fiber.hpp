#pragma once
#include "qtor/matrix.hpp"
#include <vector>

namespace qtor {

long binom(int n, int k);

/* k-subsets of {0..n-1} in lexicographic order */
std::vector<std::vector<int>> k_subsets(int n, int k);

/* k-th compound: rows/cols indexed by lex k-subsets, entries the k x k minors */
IntMat compound(const IntMat& a, int k);

/* H^*(Q^n; Z) = exterior algebra on n degree-3 generators:
   rank C(n,k) in degree 3k, zero elsewhere */
struct FiberCohomology {
    int n = 0;
    long rank(int q) const;              // 0 unless q = 3k
    std::vector<std::vector<int>> basis(int k) const { return k_subsets(n, k); }
};

FiberCohomology fiber_cohomology(int n); // throws invalid_input for n < 0

} // namespace qtor
