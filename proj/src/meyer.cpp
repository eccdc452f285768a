#include "qtor/meyer.hpp"
#include "qtor/errors.hpp"
#include <sstream>

namespace qtor {

MeyerSpace meyer_space(const QuatMatrix& c1, const QuatMatrix& c2) {
    if (c1.rows != 2 || c1.cols != 2 || c2.rows != 2 || c2.cols != 2)
        throw invalid_input("meyer_space expects 2x2 quaternionic matrices");
    if (!quat_invertible(c1)) throw invalid_input("C1 is singular");
    QuatMatrix id = QuatMatrix::identity(2);
    QuatMatrix a = quat_inverse(c1) - id;
    QuatMatrix b = c2 - id;
    QuatMatrix m(2, 4);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            m(r, c) = a(r, c);
            m(r, c + 2) = b(r, c);
        }
    MeyerSpace s;
    s.basis = real_kernel(realify(m));
    return s;
}

/* split a realified 16-vector back into the quaternionic pair (x, y) */
static void split_xy(const RatVec& v, std::vector<Quaternion>& x, std::vector<Quaternion>& y) {
    x = unrealify_vector(v.segment(0, 8));
    y = unrealify_vector(v.segment(8, 8));
}

MeyerForm meyer_form(const QuatMatrix& c1, const QuatMatrix& c2) {
    MeyerSpace sp = meyer_space(c1, c2);
    const long dim = sp.basis.cols();
    QuatMatrix g = sympl_J() * (QuatMatrix::identity(2) - c2);

    std::vector<std::vector<Quaternion>> xs(dim), ys(dim), gys(dim);
    for (long a = 0; a < dim; ++a) {
        split_xy(sp.basis.col(a), xs[a], ys[a]);
        QuatMatrix ycol(2, 1);
        ycol(0, 0) = ys[a][0];
        ycol(1, 0) = ys[a][1];
        QuatMatrix gy = g * ycol;
        gys[a] = {gy(0, 0), gy(1, 0)};
    }

    RatMat raw = RatMat::Zero(dim, dim);
    for (long a = 0; a < dim; ++a)
        for (long b = 0; b < dim; ++b) {
            Quaternion s;
            for (int t = 0; t < 2; ++t) s = s + conj(xs[a][t] + ys[a][t]) * gys[b][t];
            raw(a, b) = s.re;
        }

    MeyerForm f;
    f.sym = RatMat::Zero(dim, dim);
    f.asymmetry = 0;
    Rational half(1, 2);
    for (long a = 0; a < dim; ++a)
        for (long b = 0; b < dim; ++b) {
            f.sym(a, b) = half * (raw(a, b) + raw(b, a));
            Rational skew = half * (raw(a, b) - raw(b, a));
            if (skew < 0) skew = -skew;
            if (skew > f.asymmetry) f.asymmetry = skew;
        }
    return f;
}

int signature_of_symmetric(const RatMat& s) {
    const long n = s.rows();
    if (s.cols() != n) throw invalid_input("signature: matrix is not square");
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j)
            if (s(i, j) != s(j, i)) throw invalid_input("signature: matrix is not symmetric");

    RatMat a = s;
    int sig = 0;
    for (long t = 0; t < n; ++t) {
        if (a(t, t) == 0) {
            long pick = -1;
            for (long i = t; i < n && pick < 0; ++i)
                if (a(i, i) != 0) pick = i;
            if (pick < 0) {
                /* all remaining diagonal zero; complete a pivot from an
                   off-diagonal entry: rows i,j have zero diagonal, so the
                   symmetric add produces 2*a(i,j) at (i,i) */
                long pi = -1, pj = -1;
                for (long i = t; i < n && pi < 0; ++i)
                    for (long j = i + 1; j < n; ++j)
                        if (a(i, j) != 0) {
                            pi = i;
                            pj = j;
                            break;
                        }
                if (pi < 0) break; // zero block: null directions count 0
                a.row(pi) += a.row(pj);
                a.col(pi) += a.col(pj);
                pick = pi;
            }
            if (pick != t) {
                a.row(t).swap(a.row(pick));
                a.col(t).swap(a.col(pick));
            }
        }
        Rational p = a(t, t);
        for (long r = t + 1; r < n; ++r) {
            if (a(r, t) == 0) continue;
            Rational f = a(r, t) / p;
            a.row(r) -= f * a.row(t);
            a.col(r) -= f * a.col(t);
        }
        sig += p > 0 ? 1 : -1;
    }
    return sig;
}

int tau_quat(const QuatMatrix& c1, const QuatMatrix& c2) {
    return signature_of_symmetric(meyer_form(c1, c2).sym);
}

long sigma_m1(const std::vector<Trinion>& trinions) {
    long sum = 0;
    for (size_t i = 0; i < trinions.size(); ++i) {
        const Trinion& t = trinions[i];
        for (const QuatMatrix* c : {&t.c1, &t.c2, &t.c3})
            if (!is_quaternionic_symplectic(*c))
                throw invalid_input("trinion " + std::to_string(i) +
                                    ": matrix fails the symplectic condition");
        if (!(t.c1 * t.c2 * t.c3 == QuatMatrix::identity(2)))
            throw invalid_input("trinion " + std::to_string(i) + ": C1 C2 C3 != I");
        sum += tau_quat(t.c1, t.c2);
    }
    return sum;
}

static Int det2(const IntVec& a, const IntVec& b) { return a(0) * b(1) - a(1) * b(0); }

FanMatrix boundary_intersection_matrix(const std::vector<IntVec>& fan) {
    const long k = (long)fan.size();
    if (k < 2) throw invalid_input("boundary fan needs at least two charvecs");
    for (const IntVec& v : fan)
        if (v.size() != 2) throw invalid_input("boundary fan charvecs must lie in Z^2");
    for (long i = 0; i < k; ++i) {
        Int d = det2(fan[i], fan[(i + 1) % k]);
        if (d != 1 && d != -1)
            throw invalid_input("fan edges " + std::to_string(i) + "," +
                                std::to_string((i + 1) % k) + " fail the unimodularity check");
    }

    FanMatrix fm;
    fm.a = RatMat::Zero(k, k);
    for (long i = 0; i < k; ++i) {
        long prev = (i + k - 1) % k, next = (i + 1) % k;
        fm.a(i, i) = Rational(-det2(fan[prev], fan[next]));
        if (k == 2) {
            fm.a(i, 1 - i) = 2;
        } else {
            fm.a(i, next) = 1;
            fm.a(i, prev) = 1;
        }
    }
    {
        std::ostringstream os;
        os << "diagonal convention: A_ii = -det(v_{i-1}, v_{i+1}), signed lattice determinant";
        fm.flags.push_back(os.str());
    }
    return fm;
}

Rational quaternionic_self_intersection(const std::vector<Quaternion>& v1,
                                        const std::vector<Quaternion>& v2,
                                        std::vector<std::string>& flags) {
    if (v1.size() != 2 || v2.size() != 2)
        throw invalid_input("self-intersection expects two quaternionic 2-vectors");
    QuatMatrix m(2, 2);
    m(0, 0) = v1[0];
    m(0, 1) = v1[1];
    m(1, 0) = v2[0];
    m(1, 1) = v2[1];
    Dieudonne d = dieudonne_det(m);
    if (!d.is_rational)
        throw unsupported("Dieudonne determinant of the neighbor pair is irrational "
                          "(realified det = " + to_string(d.det_realified) + ")");
    flags.push_back("quaternionic neighbor pair: Dieudonne value used, sign ambiguous");
    return -d.value;
}

SignatureAssembly total_signature(const std::vector<Trinion>& trinions,
                                  const std::vector<std::vector<IntVec>>& fans) {
    SignatureAssembly out;
    for (const Trinion& t : trinions) out.trinion_taus.push_back(tau_quat(t.c1, t.c2));
    out.sigma_m1 = sigma_m1(trinions);
    for (const auto& fan : fans) {
        FanMatrix fm = boundary_intersection_matrix(fan);
        int s = signature_of_symmetric(fm.a);
        out.component_signatures.push_back(s);
        out.sigma_m2 += s;
        for (const std::string& f : fm.flags) out.warnings.push_back(f);
        out.component_matrices.push_back(std::move(fm));
    }
    out.sigma_total = out.sigma_m1 + out.sigma_m2;
    return out;
}

} // namespace qtor
