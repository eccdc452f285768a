#pragma once
#include "qtor/quat_matrix.hpp"
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qtor {

/* V_{C1,C2} = {(x,y) in H^2 x H^2 : (C1^-1 - I)x + (C2 - I)y = 0}, realified;
   columns of basis span the kernel of the 8x16 block matrix */
struct MeyerSpace {
    RatMat basis; // 16 x dim
};
MeyerSpace meyer_space(const QuatMatrix& c1, const QuatMatrix& c2); // throws invalid_input when C1 singular

/* <(x,y),(x',y')> = Re((x+y)^* J (I - C2) y'), pulled back to the basis;
   sym = (B + B^t)/2, asymmetry = max |(B - B^t)/2| (expected 0 for
   symplectic inputs) */
struct MeyerForm {
    RatMat sym;
    Rational asymmetry;
};
MeyerForm meyer_form(const QuatMatrix& c1, const QuatMatrix& c2);

/* Sylvester signature by exact congruence diagonalization; zero pivots are
   completed by the symmetric add-row/column step; null directions count 0 */
int signature_of_symmetric(const RatMat& s); // throws invalid_input if not symmetric

int tau_quat(const QuatMatrix& c1, const QuatMatrix& c2);

struct Trinion {
    QuatMatrix c1, c2, c3;
};

/* sum of tau over trinions; rejects (invalid_input) when C1 C2 C3 != I or a
   matrix fails the symplectic test */
long sigma_m1(const std::vector<Trinion>& trinions);

struct FanMatrix {
    RatMat a;                       // symmetric k x k
    std::vector<std::string> flags; // sign-ambiguity fallbacks etc.
};

/* cyclic fan of integer charvecs in Z^2; off-diagonal 1 for cyclic neighbors
   (2 when k = 2), diagonal -det(v_{i-1}, v_{i+1}) */
FanMatrix boundary_intersection_matrix(const std::vector<IntVec>& fan);

/* diagonal entry for genuinely quaternionic neighbor data: -dieudonne value,
   sign ambiguous, flagged; throws unsupported when the root is irrational */
Rational quaternionic_self_intersection(const std::vector<Quaternion>& v1,
                                        const std::vector<Quaternion>& v2,
                                        std::vector<std::string>& flags);

struct SignatureAssembly {
    long sigma_m1 = 0;
    long sigma_m2 = 0;
    long sigma_total = 0;
    std::vector<int> trinion_taus;
    std::vector<FanMatrix> component_matrices;
    std::vector<int> component_signatures;
    std::vector<std::string> warnings;
};

SignatureAssembly total_signature(const std::vector<Trinion>& trinions,
                                  const std::vector<std::vector<IntVec>>& fans);

} // namespace qtor
