#include "qtor/orbit.hpp"
#include "qtor/errors.hpp"
#include "qtor/snf.hpp"
#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace qtor {

bool OrbitComplex::has_nontrivial_monodromy() const {
    if (!monodromy.present) return false;
    for (const auto& [id, m] : monodromy.matrices) {
        IntMat id_n = IntMat::Zero(m.rows(), m.cols());
        for (Eigen::Index i = 0; i < m.rows() && i < m.cols(); ++i) id_n(i, i) = 1;
        if (m != id_n) return true;
    }
    return false;
}

int OrbitComplex::max_cell_dim() const {
    int d = 0;
    for (const Cell& c : cells) d = std::max(d, c.dim);
    return d;
}

/* ---------------- index ---------------- */

ComplexIndex::ComplexIndex(const OrbitComplex& ox) : x(&ox) {
    for (size_t t = 0; t < ox.cells.size(); ++t) {
        if (!cell_pos.emplace(ox.cells[t].id, (int)t).second)
            throw invalid_input("duplicate cell id " + std::to_string(ox.cells[t].id));
    }
    for (size_t t = 0; t < ox.faces.size(); ++t)
        if (!face_pos.emplace(ox.faces[t].id, (int)t).second)
            throw invalid_input("duplicate face id " + std::to_string(ox.faces[t].id));
    for (size_t t = 0; t < ox.facets.size(); ++t)
        if (!facet_pos.emplace(ox.facets[t].id, (int)t).second)
            throw invalid_input("duplicate facet id " + std::to_string(ox.facets[t].id));

    for (const Cell& c : ox.cells) max_dim = std::max(max_dim, c.dim);
    cells_by_dim.assign(max_dim + 1, {});
    for (size_t t = 0; t < ox.cells.size(); ++t)
        cells_by_dim[ox.cells[t].dim].push_back((int)t);
    /* deterministic per-dimension order: ascending id */
    for (auto& v : cells_by_dim)
        std::sort(v.begin(), v.end(), [&](int a, int b) { return ox.cells[a].id < ox.cells[b].id; });

    for (const Cell& c : ox.cells) {
        if (c.dim == 0 && (base_vertex < 0 || c.id < base_vertex)) base_vertex = c.id;
        if (c.dim != 1) continue;
        long head = -1, tail = -1;
        for (auto& [cid, inc] : c.boundary) {
            if (inc == 1 && head < 0) head = cid;
            else if (inc == -1 && tail < 0) tail = cid;
        }
        if (head >= 0 && tail >= 0) edge_ends[c.id] = {tail, head};
    }

    /* spanning forest: the one given, else BFS over edges in id order */
    if (ox.monodromy.present && !ox.monodromy.tree.empty()) {
        tree_edges = ox.monodromy.tree;
        std::sort(tree_edges.begin(), tree_edges.end());
    } else {
        std::map<long, std::vector<std::pair<long, long>>> adj; // vertex -> (edge, other)
        for (auto& [e, ends] : edge_ends) {
            adj[ends.first].push_back({e, ends.second});
            adj[ends.second].push_back({e, ends.first});
        }
        for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
        std::set<long> seen;
        for (const Cell& c : ox.cells) {
            if (c.dim != 0 || seen.count(c.id)) continue;
            seen.insert(c.id);
            std::queue<long> q;
            q.push(c.id);
            while (!q.empty()) {
                long v = q.front();
                q.pop();
                for (auto& [e, w] : adj[v]) {
                    if (seen.count(w)) continue;
                    seen.insert(w);
                    tree_edges.push_back(e);
                    q.push(w);
                }
            }
        }
        std::sort(tree_edges.begin(), tree_edges.end());
    }

    if (ox.monodromy.present)
        for (auto& [e, m] : ox.monodromy.matrices)
            if (!is_tree_edge(e)) edge_matrix[e] = m;
}

bool ComplexIndex::is_tree_edge(long e) const {
    return std::binary_search(tree_edges.begin(), tree_edges.end(), e);
}

const IntMat* ComplexIndex::matrix_of(long e) const {
    auto it = edge_matrix.find(e);
    return it == edge_matrix.end() ? nullptr : &it->second;
}

bool ComplexIndex::connected() const {
    if (cells_by_dim.empty() || cells_by_dim[0].empty()) return x->cells.empty();
    std::map<long, std::vector<long>> adj;
    for (auto& [e, ends] : edge_ends) {
        adj[ends.first].push_back(ends.second);
        adj[ends.second].push_back(ends.first);
    }
    std::set<long> seen{x->cells[cells_by_dim[0][0]].id};
    std::queue<long> q;
    q.push(*seen.begin());
    while (!q.empty()) {
        long v = q.front();
        q.pop();
        for (long w : adj[v])
            if (seen.insert(w).second) q.push(w);
    }
    return seen.size() == cells_by_dim[0].size();
}

long ComplexIndex::anchor_vertex(int cell_index) const {
    /* closure by repeated boundary descent */
    std::set<long> todo{x->cells[cell_index].id}, done;
    long best = -1;
    while (!todo.empty()) {
        long id = *todo.begin();
        todo.erase(todo.begin());
        if (!done.insert(id).second) continue;
        auto it = cell_pos.find(id);
        if (it == cell_pos.end()) continue;
        const Cell& c = x->cells[it->second];
        if (c.dim == 0 && (best < 0 || c.id < best)) best = c.id;
        for (auto& [b, inc] : c.boundary) todo.insert(b);
    }
    return best;
}

std::vector<std::pair<long, int>> ComplexIndex::attaching_walk(int cell_index) const {
    const Cell& c = x->cells[cell_index];
    if (c.dim != 2) throw internal_error("attaching walk requested for a non-2-cell");
    std::vector<std::pair<long, int>> walk;
    if (c.boundary.empty()) return walk;

    long start = -1, cur = -1;
    for (auto& [e, dir] : c.boundary) {
        if (dir != 1 && dir != -1)
            throw invalid_input("2-cell " + std::to_string(c.id) +
                                ": walk step on edge " + std::to_string(e) +
                                " must have direction +1 or -1");
        auto it = edge_ends.find(e);
        if (it == edge_ends.end())
            throw invalid_input("2-cell " + std::to_string(c.id) + ": boundary entry " +
                                std::to_string(e) + " is not a 1-cell with two ends");
        auto [tail, head] = it->second;
        long from = dir == 1 ? tail : head;
        long to = dir == 1 ? head : tail;
        if (cur < 0) start = from;
        else if (from != cur)
            throw invalid_input("2-cell " + std::to_string(c.id) +
                                ": attaching walk breaks at edge " + std::to_string(e));
        cur = to;
        walk.push_back({e, dir});
    }
    if (cur != start)
        throw invalid_input("2-cell " + std::to_string(c.id) + ": attaching walk does not close");

    /* rotate so the walk starts at the anchor vertex */
    long anchor = anchor_vertex(cell_index);
    if (anchor >= 0) {
        long v = start;
        for (size_t t = 0; t < walk.size(); ++t) {
            if (v == anchor) {
                std::rotate(walk.begin(), walk.begin() + t, walk.end());
                break;
            }
            auto [tail, head] = edge_ends.at(walk[t].first);
            v = walk[t].second == 1 ? head : tail;
        }
    }
    return walk;
}

std::map<long, Int> ComplexIndex::incidence_of(int cell_index) const {
    const Cell& c = x->cells[cell_index];
    std::map<long, Int> inc;
    if (c.dim == 2) {
        for (auto& [e, dir] : c.boundary) inc[e] += dir;
    } else {
        for (auto& [e, n] : c.boundary) inc[e] += n;
    }
    /* drop zeros so chain matrices stay sparse in spirit */
    for (auto it = inc.begin(); it != inc.end();)
        it = it->second == 0 ? inc.erase(it) : std::next(it);
    return inc;
}

IntChainComplex ComplexIndex::chain_complex() const {
    IntChainComplex c;
    c.ranks.resize(max_dim + 1);
    c.d.resize(max_dim + 1);
    for (int p = 0; p <= max_dim; ++p) c.ranks[p] = (long)cells_by_dim[p].size();
    for (int p = 1; p <= max_dim; ++p) {
        IntMat d = IntMat::Zero(c.ranks[p - 1], c.ranks[p]);
        std::map<long, int> lower_col;
        for (size_t t = 0; t < cells_by_dim[p - 1].size(); ++t)
            lower_col[x->cells[cells_by_dim[p - 1][t]].id] = (int)t;
        for (size_t t = 0; t < cells_by_dim[p].size(); ++t) {
            for (auto& [b, n] : incidence_of(cells_by_dim[p][t])) {
                auto it = lower_col.find(b);
                if (it == lower_col.end())
                    throw invalid_input("cell " + std::to_string(x->cells[cells_by_dim[p][t]].id) +
                                        " has boundary in the wrong dimension");
                d(it->second, (Eigen::Index)t) += n;
            }
        }
        c.d[p] = d;
    }
    return c;
}

IntCochainComplex ComplexIndex::cochain_complex() const {
    IntChainComplex ch = chain_complex();
    IntCochainComplex co;
    co.ranks = ch.ranks;
    co.d.resize(co.ranks.size());
    for (size_t p = 0; p + 1 < co.ranks.size(); ++p)
        co.d[p] = ch.d[p + 1].transpose();
    co.d[co.ranks.size() - 1] = IntMat::Zero(0, co.ranks.back());
    return co;
}

/* ---------------- validation ---------------- */

static std::string vec_str(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i).get_str();
    os << ")";
    return os.str();
}

ValidationReport validate(const OrbitComplex& x) {
    ValidationReport rep;
    auto bad = [&](const std::string& code, const std::string& msg) {
        rep.violations.push_back({code, msg});
    };

    if (x.torus_rank < 0) {
        bad("torus_rank", "torus_rank must be nonnegative");
        return rep;
    }

    /* duplicate ids and dangling references are fatal for the index, so
       re-check them gently here first */
    {
        std::set<long> ids;
        for (const Cell& c : x.cells)
            if (!ids.insert(c.id).second) bad("duplicate_id", "duplicate cell id " + std::to_string(c.id));
        ids.clear();
        for (const Face& f : x.faces)
            if (!ids.insert(f.id).second) bad("duplicate_id", "duplicate face id " + std::to_string(f.id));
        ids.clear();
        for (const Facet& f : x.facets)
            if (!ids.insert(f.id).second) bad("duplicate_id", "duplicate facet id " + std::to_string(f.id));
        if (!rep.ok()) return rep;
    }

    std::map<long, const Face*> face_of;
    for (const Face& f : x.faces) face_of[f.id] = &f;
    std::map<long, const Facet*> facet_of;
    for (const Facet& f : x.facets) facet_of[f.id] = &f;
    std::map<long, const Cell*> cell_of;
    for (const Cell& c : x.cells) cell_of[c.id] = &c;

    for (const Facet& f : x.facets) {
        if (f.charvec.size() != x.torus_rank) {
            bad("charvec_length", "facet " + std::to_string(f.id) + " charvec has length " +
                                      std::to_string(f.charvec.size()) + ", expected " +
                                      std::to_string(x.torus_rank));
            continue;
        }
        Int g = 0;
        for (Eigen::Index i = 0; i < f.charvec.size(); ++i) g = gcd(g, f.charvec(i));
        if (g != 1)
            bad("charvec_primitive", "facet " + std::to_string(f.id) + " charvec " +
                                         vec_str(f.charvec) + " is not primitive");
    }

    for (const Face& f : x.faces) {
        if (f.dim < 0 || f.dim > x.torus_rank)
            bad("face_dim", "face " + std::to_string(f.id) + " has dimension " +
                                std::to_string(f.dim) + " outside [0, " +
                                std::to_string(x.torus_rank) + "]");
        for (long fid : f.facets)
            if (!facet_of.count(fid))
                bad("unknown_facet", "face " + std::to_string(f.id) + " references facet " +
                                         std::to_string(fid));
        if ((long)f.facets.size() != (long)x.torus_rank - f.dim)
            bad("facet_count", "face " + std::to_string(f.id) + " (dim " + std::to_string(f.dim) +
                                   ") touches " + std::to_string(f.facets.size()) +
                                   " facets, expected " + std::to_string(x.torus_rank - f.dim));
    }

    for (const Cell& c : x.cells) {
        auto fit = face_of.find(c.face);
        if (fit == face_of.end()) {
            bad("unknown_face", "cell " + std::to_string(c.id) + " references face " +
                                    std::to_string(c.face));
        } else if (c.dim > fit->second->dim) {
            bad("cell_dim", "cell " + std::to_string(c.id) + " (dim " + std::to_string(c.dim) +
                                ") lies in face " + std::to_string(c.face) + " of dimension " +
                                std::to_string(fit->second->dim));
        }
        for (auto& [b, inc] : c.boundary) {
            auto bit = cell_of.find(b);
            if (bit == cell_of.end())
                bad("unknown_cell", "cell " + std::to_string(c.id) + " has boundary entry " +
                                        std::to_string(b));
            else if (bit->second->dim != c.dim - 1)
                bad("boundary_dim", "cell " + std::to_string(c.id) + " (dim " +
                                        std::to_string(c.dim) + ") lists cell " + std::to_string(b) +
                                        " of dimension " + std::to_string(bit->second->dim));
        }
        if (c.dim == 1) {
            int plus = 0, minus = 0;
            for (auto& [b, inc] : c.boundary) {
                if (inc == 1) ++plus;
                else if (inc == -1) ++minus;
                else bad("edge_boundary", "1-cell " + std::to_string(c.id) +
                                              " has incidence " + std::to_string(inc) +
                                              ", expected +1/-1");
            }
            if (plus != 1 || minus != 1)
                bad("edge_boundary", "1-cell " + std::to_string(c.id) +
                                         " needs exactly one +1 (head) and one -1 (tail) entry");
        }
    }
    if (!rep.ok()) return rep;

    /* unimodularity: the facet charvecs of every face must span a direct
       summand, i.e. all Smith divisors are 1 */
    for (const Face& f : x.faces) {
        long c = (long)f.facets.size();
        if (c == 0) continue;
        IntMat m = IntMat::Zero(c, x.torus_rank);
        for (long t = 0; t < c; ++t)
            m.row(t) = facet_of.at(f.facets[t])->charvec.transpose();
        SNF s = smith_normal_form(m);
        if (s.rank != c) {
            bad("unimodularity", "face " + std::to_string(f.id) +
                                     ": facet vectors are rank deficient");
            continue;
        }
        for (const Int& d : s.divisors)
            if (d != 1) {
                bad("unimodularity", "elementary divisor " + d.get_str() + " at face " +
                                         std::to_string(f.id) + " (dim " + std::to_string(f.dim) +
                                         ")");
                break;
            }
    }

    ComplexIndex idx(x);

    /* walk structure of every 2-cell */
    for (int ci : idx.cells_by_dim.size() > 2 ? idx.cells_by_dim[2] : std::vector<int>{}) {
        try {
            idx.attaching_walk(ci);
        } catch (const invalid_input& e) {
            bad("attaching_walk", e.what());
        }
    }
    if (!rep.ok()) return rep;

    /* boundary of boundary */
    try {
        if (!squares_to_zero(idx.chain_complex()))
            bad("dd_zero", "boundary of boundary is nonzero");
    } catch (const invalid_input& e) {
        bad("dd_zero", e.what());
    }

    /* monodromy data */
    if (x.monodromy.present) {
        for (long e : x.monodromy.tree) {
            auto it = cell_of.find(e);
            if (it == cell_of.end() || it->second->dim != 1)
                bad("monodromy_tree", "tree entry " + std::to_string(e) + " is not a 1-cell");
        }
        /* the tree must be acyclic and touch each vertex at most once */
        {
            std::set<long> verts;
            long nedges = 0;
            std::map<long, std::vector<std::pair<long, long>>> adj;
            for (long e : x.monodromy.tree) {
                auto it = idx.edge_ends.find(e);
                if (it == idx.edge_ends.end()) continue;
                ++nedges;
                verts.insert(it->second.first);
                verts.insert(it->second.second);
                adj[it->second.first].push_back({e, it->second.second});
                adj[it->second.second].push_back({e, it->second.first});
            }
            /* acyclic iff #vertices = #edges + #components */
            std::set<long> seen;
            long comps = 0;
            for (long v : verts) {
                if (seen.count(v)) continue;
                ++comps;
                std::queue<long> q;
                q.push(v);
                seen.insert(v);
                while (!q.empty()) {
                    long u = q.front();
                    q.pop();
                    for (auto& [e, w] : adj[u])
                        if (seen.insert(w).second) q.push(w);
                }
            }
            if (nedges > 0 && (long)verts.size() != nedges + comps)
                bad("monodromy_tree", "monodromy tree contains a cycle");
        }
        for (auto& [e, m] : x.monodromy.matrices) {
            auto it = cell_of.find(e);
            if (it == cell_of.end() || it->second->dim != 1) {
                bad("monodromy_edge", "monodromy entry " + std::to_string(e) + " is not a 1-cell");
                continue;
            }
            if (idx.is_tree_edge(e)) {
                bad("monodromy_tree_edge", "monodromy matrix assigned to tree edge " +
                                               std::to_string(e));
                continue;
            }
            if (m.rows() != x.torus_rank || m.cols() != x.torus_rank) {
                bad("monodromy_shape", "monodromy matrix on edge " + std::to_string(e) +
                                           " is not " + std::to_string(x.torus_rank) + "x" +
                                           std::to_string(x.torus_rank));
                continue;
            }
            Int d = det_integer(m);
            if (d != 1 && d != -1)
                bad("monodromy_det", "monodromy matrix on edge " + std::to_string(e) +
                                         " has determinant " + d.get_str());
        }

        /* the edge matrices must define a representation of the fundamental
           group: every 2-cell walk has trivial holonomy */
        if (rep.ok() && x.has_nontrivial_monodromy() && idx.max_dim >= 2) {
            for (int ci : idx.cells_by_dim[2]) {
                IntMat h = IntMat::Zero(x.torus_rank, x.torus_rank);
                for (int i = 0; i < x.torus_rank; ++i) h(i, i) = 1;
                for (auto& [e, dir] : idx.attaching_walk(ci)) {
                    const IntMat* m = idx.matrix_of(e);
                    if (!m) continue;
                    h = (dir == 1 ? *m * h : int_inverse_unimodular(*m) * h);
                }
                bool is_id = true;
                for (int i = 0; i < x.torus_rank && is_id; ++i)
                    for (int j = 0; j < x.torus_rank && is_id; ++j)
                        if (h(i, j) != (i == j ? 1 : 0)) is_id = false;
                if (!is_id)
                    bad("monodromy_cocycle", "2-cell " +
                                                 std::to_string(x.cells[ci].id) +
                                                 " has nontrivial holonomy around its boundary");
            }
        }
    }

    return rep;
}

/* ---------------- queries ---------------- */

IntMat ann_lattice(const OrbitComplex& x, long face_id) {
    const Face* face = nullptr;
    for (const Face& f : x.faces)
        if (f.id == face_id) { face = &f; break; }
    if (!face) throw invalid_input("unknown face " + std::to_string(face_id));

    IntMat m = IntMat::Zero((Eigen::Index)face->facets.size(), x.torus_rank);
    for (size_t t = 0; t < face->facets.size(); ++t) {
        const Facet* ft = nullptr;
        for (const Facet& f : x.facets)
            if (f.id == face->facets[t]) { ft = &f; break; }
        if (!ft) throw invalid_input("unknown facet " + std::to_string(face->facets[t]));
        m.row((Eigen::Index)t) = ft->charvec.transpose();
    }
    /* rows of the result generate the annihilator sublattice */
    return kernel_lattice(m).transpose();
}

IntMat holonomy(const OrbitComplex& x, const std::vector<long>& loop_edges) {
    ComplexIndex idx(x);
    if (idx.base_vertex < 0) throw invalid_input("holonomy needs a 0-cell to anchor at");
    int n = x.torus_rank;
    IntMat h = IntMat::Zero(n, n);
    for (int i = 0; i < n; ++i) h(i, i) = 1;
    long cur = idx.base_vertex;
    for (long e : loop_edges) {
        auto it = idx.edge_ends.find(e);
        if (it == idx.edge_ends.end())
            throw invalid_input("loop entry " + std::to_string(e) + " is not a 1-cell");
        auto [tail, head] = it->second;
        int dir;
        if (tail == cur) dir = 1;
        else if (head == cur) dir = -1;
        else throw invalid_input("loop is not a connected edge path at edge " + std::to_string(e));
        const IntMat* m = idx.matrix_of(e);
        if (m) h = (dir == 1 ? *m * h : int_inverse_unimodular(*m) * h);
        cur = dir == 1 ? head : tail;
    }
    if (cur != idx.base_vertex) throw invalid_input("loop does not close at the base vertex");
    return h;
}

} // namespace qtor
