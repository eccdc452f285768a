#include "qtor/snf.hpp"
#include "qtor/errors.hpp"
#include <sstream>

namespace qtor {

/* pick the nonzero entry of smallest |value| in a(t.., t..); ties go to the
   lowest row index, then the lowest column index */
static bool find_pivot(const IntMat& a, Eigen::Index t, Eigen::Index& pr, Eigen::Index& pc) {
    bool found = false;
    Int best = 0;
    for (Eigen::Index i = t; i < a.rows(); ++i)
        for (Eigen::Index j = t; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            Int v = abs(a(i, j));
            if (!found || v < best) {
                found = true;
                best = v;
                pr = i;
                pc = j;
            }
        }
    return found;
}

SNF smith_normal_form(const IntMat& a) {
    SNF s;
    Eigen::Index m = a.rows(), n = a.cols();
    s.D = a;
    s.U = IntMat::Zero(m, m);
    s.V = IntMat::Zero(n, n);
    for (Eigen::Index i = 0; i < m; ++i) s.U(i, i) = 1;
    for (Eigen::Index j = 0; j < n; ++j) s.V(j, j) = 1;

    IntMat& D = s.D;
    Eigen::Index t = 0;
    while (t < m && t < n) {
        Eigen::Index pr, pc;
        if (!find_pivot(D, t, pr, pc)) break;
        if (pr != t) { D.row(pr).swap(D.row(t)); s.U.row(pr).swap(s.U.row(t)); }
        if (pc != t) { D.col(pc).swap(D.col(t)); s.V.col(pc).swap(s.V.col(t)); }

        bool dirty = false;
        /* clear the column, then the row; a nonzero remainder re-enters the
           working block and the smallest-pivot rule shrinks it next round */
        for (Eigen::Index i = t + 1; i < m; ++i) {
            if (D(i, t) == 0) continue;
            Int q = D(i, t) / D(t, t); // truncated division keeps |remainder| < |pivot|
            if (q != 0) { D.row(i) -= q * D.row(t); s.U.row(i) -= q * s.U.row(t); }
            if (D(i, t) != 0) dirty = true;
        }
        for (Eigen::Index j = t + 1; j < n; ++j) {
            if (D(t, j) == 0) continue;
            Int q = D(t, j) / D(t, t);
            if (q != 0) { D.col(j) -= q * D.col(t); s.V.col(j) -= q * s.V.col(t); }
            if (D(t, j) != 0) dirty = true;
        }
        if (dirty) continue; // re-pivot inside the same block

        /* divisibility: fold any entry the pivot misses into column t */
        bool fixed = false;
        for (Eigen::Index i = t + 1; i < m && !fixed; ++i)
            for (Eigen::Index j = t + 1; j < n && !fixed; ++j)
                if (D(i, j) % D(t, t) != 0) {
                    D.col(t) += D.col(j);
                    s.V.col(t) += s.V.col(j);
                    fixed = true;
                }
        if (fixed) continue;

        if (D(t, t) < 0) { D.row(t) = -D.row(t); s.U.row(t) = -s.U.row(t); }
        ++t;
    }

    s.rank = (long)t;
    for (Eigen::Index i = 0; i < t; ++i) s.divisors.push_back(D(i, i));
    return s;
}

std::string AbelianGroup::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const Int& t : torsion) {
        os << (first ? "" : " + ") << "Z/" << t.get_str();
        first = false;
    }
    return os.str();
}

AbelianGroup quotient_group(long ambient, const IntMat& gens) {
    if (gens.size() != 0 && gens.rows() != ambient)
        throw internal_error("quotient_group: ambient rank mismatch");
    AbelianGroup g;
    if (gens.size() == 0 || gens.cols() == 0) {
        g.free_rank = ambient;
        return g;
    }
    SNF s = smith_normal_form(gens);
    g.free_rank = ambient - s.rank;
    for (const Int& d : s.divisors)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

IntMat kernel_lattice(const IntMat& a) {
    if (a.rows() == 0) {
        /* everything is in the kernel */
        IntMat id = IntMat::Zero(a.cols(), a.cols());
        for (Eigen::Index i = 0; i < a.cols(); ++i) id(i, i) = 1;
        return id;
    }
    SNF s = smith_normal_form(a);
    /* A = U^-1 D V^-1, so A x = 0 iff the first `rank` coords of V^-1 x vanish:
       the trailing columns of V are a saturated kernel basis */
    return s.V.rightCols(a.cols() - s.rank);
}

bool solve_integral(const IntMat& a, const IntMat& b, IntMat& x) {
    RatMat xr;
    if (!solve_rational(to_rational(a), to_rational(b), xr)) return false;
    x = to_integer(xr); // throws internal_error when fractional
    return true;
}

} // namespace qtor
