#include "qtor/chain.hpp"
#include "qtor/errors.hpp"

namespace qtor {

static bool composes_to_zero(const IntMat& first, const IntMat& then) {
    if (first.size() == 0 || then.size() == 0) return true;
    IntMat prod = then * first;
    for (Eigen::Index i = 0; i < prod.rows(); ++i)
        for (Eigen::Index j = 0; j < prod.cols(); ++j)
            if (prod(i, j) != 0) return false;
    return true;
}

bool squares_to_zero(const IntChainComplex& c) {
    for (size_t p = 2; p < c.d.size(); ++p)
        if (!composes_to_zero(c.d[p], c.d[p - 1])) return false;
    return true;
}

bool squares_to_zero(const IntCochainComplex& c) {
    for (size_t p = 0; p + 1 < c.d.size(); ++p)
        if (!composes_to_zero(c.d[p], c.d[p + 1])) return false;
    return true;
}

/* ker(out)/im(in): kernel basis K of `out`, image generators written in the
   K-basis (integral because K is saturated), then the quotient descriptor */
static AbelianGroup subquotient(long rank, const IntMat& out, const IntMat& in) {
    IntMat k;
    if (out.size() == 0) {
        k = IntMat::Zero(rank, rank);
        for (Eigen::Index i = 0; i < rank; ++i) k(i, i) = 1;
    } else {
        k = kernel_lattice(out);
    }
    if (in.size() == 0 || in.cols() == 0 || k.cols() == 0)
        return quotient_group(k.cols(), IntMat());
    IntMat coords;
    if (!solve_integral(k, in, coords))
        throw invalid_input("chain complex does not square to zero (image escapes the kernel)");
    return quotient_group(k.cols(), coords);
}

std::vector<AbelianGroup> homology(const IntChainComplex& c) {
    if (!squares_to_zero(c)) throw invalid_input("boundary of boundary is nonzero");
    size_t n = c.ranks.size();
    std::vector<AbelianGroup> h(n);
    for (size_t p = 0; p < n; ++p) {
        IntMat out = (p >= 1 && p < c.d.size()) ? c.d[p] : IntMat();
        IntMat in = (p + 1 < c.d.size()) ? c.d[p + 1] : IntMat();
        h[p] = subquotient(c.ranks[p], out, in);
    }
    return h;
}

std::vector<AbelianGroup> cohomology(const IntCochainComplex& c) {
    if (!squares_to_zero(c)) throw invalid_input("coboundary does not square to zero");
    size_t n = c.ranks.size();
    std::vector<AbelianGroup> h(n);
    for (size_t p = 0; p < n; ++p) {
        IntMat out = (p < c.d.size()) ? c.d[p] : IntMat();
        IntMat in = (p >= 1 && p - 1 < c.d.size()) ? c.d[p - 1] : IntMat();
        h[p] = subquotient(c.ranks[p], out, in);
    }
    return h;
}

} // namespace qtor
