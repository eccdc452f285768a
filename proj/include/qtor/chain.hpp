#pragma once
#include "qtor/snf.hpp"
#include <vector>

namespace qtor {

/* chain complex of free Z-modules, d[p] : C_p -> C_{p-1} for p >= 1;
   d[0] is ignored (kept so indices line up with degrees) */
struct IntChainComplex {
    std::vector<long> ranks;
    std::vector<IntMat> d;
};

/* cochain complex, d[p] : C^p -> C^{p+1}; d[last] maps to 0 */
struct IntCochainComplex {
    std::vector<long> ranks;
    std::vector<IntMat> d;
};

bool squares_to_zero(const IntChainComplex& c);
bool squares_to_zero(const IntCochainComplex& c);

/* H_p = ker d_p / im d_{p+1}; throws invalid_input when d d != 0 */
std::vector<AbelianGroup> homology(const IntChainComplex& c);

/* H^p = ker d^p / im d^{p-1} */
std::vector<AbelianGroup> cohomology(const IntCochainComplex& c);

} // namespace qtor
