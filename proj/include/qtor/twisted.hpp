#pragma once
#include "qtor/orbit.hpp"

namespace qtor {

/* cochain complex with coefficients in Z^m twisted by edge holonomies
   (rep: 1-cell id -> GL(m,Z), absent = identity). Stalks are identified with
   the base stalk through the spanning tree, so only non-tree edges twist.
   Nontrivial rep together with cells of dimension >= 3 is refused:
   the input format carries attaching walks only up to dimension 2. */
IntCochainComplex twisted_cochain_complex(const OrbitComplex& x,
                                          const std::map<long, IntMat>& rep,
                                          int m);

namespace detail {
/* one additive contribution to the coboundary block of a higher cell */
struct TwistStep {
    long lower; // id of the boundary cell the contribution comes from
    int sign;
    IntMat hol; // stalk transport (m x m)
};
std::vector<TwistStep> coboundary_steps(const ComplexIndex& idx, int cell_index,
                                        const std::map<long, IntMat>& rep, int m);
} // namespace detail

struct GroupPresentation {
    int generators = 0;
    std::vector<long> generator_edges;      // 1-cell id per generator
    std::vector<std::vector<int>> relators; // signed 1-based generator indices
    std::string to_string() const;          // "<g1, g2 | g1 g2 g1^-1 g2^-1>"
};

/* generators = 1-cells outside a spanning tree, relators = attaching walks of
   2-cells; throws invalid_input when the complex is disconnected */
GroupPresentation pi1_presentation(const OrbitComplex& x);

/* free + cyclic reduction and elimination of length-1 relators, iterated */
GroupPresentation tietze_reduce(const GroupPresentation& p);

bool trivially_trivial(const GroupPresentation& p);

AbelianGroup abelianization(const GroupPresentation& p);

} // namespace qtor
