#include "qtor/spectral.hpp"
#include "qtor/errors.hpp"
#include <sstream>

namespace qtor {

long E1Page::rank(int p, int q) const {
    if (q < 0 || q % 3 != 0) return 0;
    int k = q / 3;
    if (k >= (int)rows.size()) return 0;
    if (p < 0 || p >= (int)rows[k].ranks.size()) return 0;
    return rows[k].ranks[p];
}

const AbelianGroup& SpectralPage::at(int p, int q) const {
    static const AbelianGroup zero{};
    auto it = entries.find({p, q});
    return it == entries.end() ? zero : it->second;
}

E1Page build_E1(const OrbitComplex& x) {
    if (!x.euler_class_zero)
        throw unsupported("euler class is not flagged zero: twisted spectral sequences "
                          "are outside the supported regime");
    ComplexIndex idx(x);
    const int n = x.torus_rank;
    const bool twisted = x.has_nontrivial_monodromy();
    if (twisted && idx.max_dim >= 3)
        throw unsupported("nontrivial monodromy over cells of dimension >= 3 is not "
                          "representable in this input format");

    /* annihilator bases per face, rows = generators */
    std::map<long, IntMat> ann_of_face;
    for (const Face& f : x.faces) ann_of_face[f.id] = ann_lattice(x, f.id);

    E1Page page;
    page.n = n;
    page.dimB = n;
    page.rows.resize(n + 1);

    const std::map<long, IntMat>& rep = x.monodromy.matrices;

    for (int k = 0; k <= n; ++k) {
        auto& row = page.rows[k];
        row.k = k;
        row.ranks.assign(page.dimB + 1, 0);
        row.blocks.assign(page.dimB + 1, {});
        row.d.assign(page.dimB + 1, IntMat());

        /* module layout per column p: cells in id order, block rank C(d_e, k) */
        std::vector<std::map<long, long>> offset(page.dimB + 1); // cell id -> block offset
        for (int p = 0; p <= page.dimB; ++p) {
            long off = 0;
            if (p <= idx.max_dim)
                for (int ci : idx.cells_by_dim[p]) {
                    const Cell& c = x.cells[ci];
                    long r = binom(x.faces[idx.face_pos.at(c.face)].dim, k);
                    if (r > 0) {
                        offset[p][c.id] = off;
                        row.blocks[p].push_back({c.id, r});
                        off += r;
                    }
                }
            row.ranks[p] = off;
        }

        /* std-coordinate embeddings E_e = compound(B_e, k)^t, columns = wedges */
        std::map<long, IntMat> emb;
        for (const Cell& c : x.cells) {
            const IntMat& b = ann_of_face.at(c.face);
            emb[c.id] = compound(b, k).transpose(); // C(n,k) x C(d_e,k)
        }

        for (int p = 0; p < page.dimB; ++p) {
            IntMat d = IntMat::Zero(row.ranks[p + 1], row.ranks[p]);
            if (p + 1 <= idx.max_dim && row.ranks[p + 1] > 0 && row.ranks[p] > 0) {
                for (int ci : idx.cells_by_dim[p + 1]) {
                    const Cell& f = x.cells[ci];
                    auto fo = offset[p + 1].find(f.id);
                    if (fo == offset[p + 1].end()) continue;
                    const IntMat& ef = emb.at(f.id);
                    for (auto& s : detail::coboundary_steps(idx, ci, rep, n)) {
                        auto eo = offset[p].find(s.lower);
                        if (eo == offset[p].end()) continue;
                        /* transport the lower stalk, then express it in the
                           basis of the higher stalk; the inclusion
                           Ann(lower) <= Ann(higher) makes this integral */
                        IntMat t = compound(s.hol, k) * emb.at(s.lower);
                        IntMat m;
                        if (!solve_integral(ef, t, m))
                            throw internal_error(
                                "sublattice inclusion failed between cells " +
                                std::to_string(s.lower) + " and " + std::to_string(f.id));
                        d.block(fo->second, eo->second, m.rows(), m.cols()) += Int(s.sign) * m;
                    }
                }
            }
            row.d[p] = d;
        }
        row.d[page.dimB] = IntMat::Zero(0, row.ranks[page.dimB]);

        /* d1 must square to zero; anything else is a construction bug */
        IntCochainComplex check{row.ranks, row.d};
        if (!squares_to_zero(check))
            throw internal_error("E1 differential does not square to zero at q = " +
                                 std::to_string(3 * k));
    }
    return page;
}

SpectralPage compute_E2(const E1Page& e1) {
    SpectralPage page;
    page.r = 2;
    page.n = e1.n;
    page.dimB = e1.dimB;
    for (const auto& row : e1.rows) {
        IntCochainComplex c{row.ranks, row.d};
        std::vector<AbelianGroup> h = cohomology(c);
        for (size_t p = 0; p < h.size(); ++p)
            if (!h[p].is_zero()) page.entries[{(int)p, 3 * row.k}] = h[p];
    }
    return page;
}

CollapseResult collapse_certificate(const SpectralPage& e2, int dimB) {
    CollapseResult res;
    res.certified = true;
    for (int r = 4; r <= dimB; r += 3) {
        for (const auto& [pq, g] : e2.entries) {
            auto [p, q] = pq;
            int tp = p + r, tq = q - r + 1;
            if (tq < 0 || tp > dimB) continue;
            if (!e2.at(tp, tq).is_zero()) {
                res.certified = false;
                res.threats.push_back({p, q, r});
            }
        }
    }
    return res;
}

static std::string threats_str(const std::vector<CollapseThreat>& ts) {
    std::ostringstream os;
    for (size_t i = 0; i < ts.size(); ++i)
        os << (i ? ", " : "") << "d" << ts[i].r << ": (" << ts[i].p << "," << ts[i].q << ") -> ("
           << ts[i].p + ts[i].r << "," << ts[i].q - ts[i].r + 1 << ")";
    return os.str();
}

GradedCohomology graded_cohomology(const OrbitComplex& x, bool assume_pi4_zero) {
    E1Page e1 = build_E1(x);
    SpectralPage e2 = compute_E2(e1);
    CollapseResult cert = collapse_certificate(e2, e1.dimB);
    if (!cert.certified)
        throw unsupported("collapse not certified: potential nonzero " + threats_str(cert.threats));

    GradedCohomology g;
    int top = e1.dimB + 3 * e1.n;
    g.by_degree.assign(top + 1, {});
    g.free_ranks.assign(top + 1, 0);
    for (const auto& [pq, grp] : e2.entries) {
        auto [p, q] = pq;
        g.by_degree[p + q].push_back({p, q, grp});
        g.free_ranks[p + q] += grp.free_rank;
    }
    g.h1_base = e2.at(1, 0);
    g.h2_base = e2.at(2, 0);
    g.h3_fiber_part = e2.at(0, 3);
    g.h3_base_part = e2.at(3, 0);
    g.h3_split_reported = assume_pi4_zero;
    return g;
}

long euler_characteristic(const OrbitComplex& x) {
    std::map<long, int> face_dim;
    for (const Face& f : x.faces) face_dim[f.id] = f.dim;
    long chi = 0;
    for (const Cell& c : x.cells) {
        auto it = face_dim.find(c.face);
        if (it != face_dim.end() && it->second == 0) ++chi;
    }
    return chi;
}

EulerReport euler_report(const OrbitComplex& x) {
    EulerReport r;
    r.chi = euler_characteristic(x);
    try {
        GradedCohomology g = graded_cohomology(x);
        r.cross_checked = true;
        r.chi_graded = 0;
        for (size_t deg = 0; deg < g.free_ranks.size(); ++deg)
            r.chi_graded += (deg % 2 ? -1 : 1) * g.free_ranks[deg];
        r.match = (r.chi_graded == r.chi);
    } catch (const unsupported&) {
        r.cross_checked = false;
    }
    return r;
}

static bool has_odd_torsion(const AbelianGroup& g) {
    for (const Int& t : g.torsion) {
        Int v = t;
        while (v % 2 == 0) v /= 2;
        if (v != 1) return true;
    }
    return false;
}

KGroups ahss_kgroups(const OrbitComplex& x, bool allow_empty_s0) {
    if (!x.euler_class_zero)
        throw unsupported("euler class is not flagged zero: twisted K-theory is outside "
                          "the supported regime");
    if (euler_characteristic(x) == 0 && !allow_empty_s0)
        throw unsupported("S^(0) is empty: the K-group identification assumes a vertex; "
                          "pass the override to proceed anyway");
    int dimB = x.torus_rank;
    if (dimB >= 6)
        throw unsupported("dim B >= 6: degree-3 differentials of the K-theory spectral "
                          "sequence are not ruled out");

    ComplexIndex idx(x);
    std::vector<AbelianGroup> h = cohomology(idx.cochain_complex());
    for (size_t p = 0; p < h.size(); ++p)
        if (has_odd_torsion(h[p]) && ((int)p + 3 <= dimB || (int)p >= 3))
            throw unsupported("odd torsion in H^" + std::to_string(p) +
                              "(B) where a degree-3 differential could act");

    KGroups k;
    for (size_t p = 0; p < h.size(); ++p) {
        if (h[p].is_zero()) continue;
        GradedPiece piece{(int)p, 0, h[p]};
        if (p % 2 == 0) {
            k.k0.push_back(piece);
            k.k0_rank += h[p].free_rank;
            for (const Int& t : h[p].torsion) k.k0_torsion.push_back(t);
        } else {
            k.k1.push_back(piece);
            k.k1_rank += h[p].free_rank;
            for (const Int& t : h[p].torsion) k.k1_torsion.push_back(t);
        }
    }
    return k;
}

} // namespace qtor
