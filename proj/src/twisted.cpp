#include "qtor/twisted.hpp"
#include "qtor/errors.hpp"
#include <algorithm>
#include <sstream>

namespace qtor {

static IntMat identity_mat(int n) {
    IntMat m = IntMat::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

namespace detail {

/* steps of d restricted to one codomain cell. rep maps edge id -> GL(m,Z);
   tree edges and absent edges are identity. The transport convention is the
   inverse prefix holonomy of the attaching walk (so that d*d = 0 exactly). */
std::vector<TwistStep> coboundary_steps(const ComplexIndex& idx, int cell_index,
                                        const std::map<long, IntMat>& rep, int m) {
    const Cell& c = idx.x->cells[cell_index];
    IntMat id = identity_mat(m);
    auto mat = [&](long e) -> const IntMat* {
        if (idx.is_tree_edge(e)) return nullptr;
        auto it = rep.find(e);
        return it == rep.end() ? nullptr : &it->second;
    };

    std::vector<TwistStep> steps;
    if (c.dim == 1) {
        auto [tail, head] = idx.edge_ends.at(c.id);
        const IntMat* me = mat(c.id);
        steps.push_back({head, +1, me ? int_inverse_unimodular(*me) : id});
        steps.push_back({tail, -1, id});
        return steps;
    }
    if (c.dim == 2) {
        IntMat pre = id; // holonomy of the walk prefix
        for (auto& [e, dir] : idx.attaching_walk(cell_index)) {
            const IntMat* me = mat(e);
            if (dir == 1) {
                steps.push_back({e, +1, int_inverse_unimodular(pre)});
                if (me) pre = *me * pre;
            } else {
                if (me) pre = int_inverse_unimodular(*me) * pre;
                steps.push_back({e, -1, int_inverse_unimodular(pre)});
            }
        }
        return steps;
    }
    /* dim >= 3: plain incidence; caller guarantees the rep is trivial here */
    for (auto& [b, inc] : idx.incidence_of(cell_index))
        if (inc != 0) steps.push_back({b, (int)inc.get_si(), id});
    return steps;
}

} // namespace detail

IntCochainComplex twisted_cochain_complex(const OrbitComplex& x,
                                          const std::map<long, IntMat>& rep, int m) {
    ComplexIndex idx(x);
    bool nontrivial = false;
    for (auto& [e, mt] : rep) {
        if (mt.rows() != m || mt.cols() != m)
            throw invalid_input("twisted coefficients: matrix on edge " + std::to_string(e) +
                                " is not " + std::to_string(m) + "x" + std::to_string(m));
        if (mt != identity_mat(m)) nontrivial = true;
    }
    if (nontrivial && idx.max_dim >= 3)
        throw unsupported("nontrivial local coefficients over cells of dimension >= 3 "
                          "are not representable in this input format");

    IntCochainComplex co;
    int top = idx.max_dim;
    co.ranks.resize(top + 1);
    co.d.resize(top + 1);
    for (int p = 0; p <= top; ++p) co.ranks[p] = m * (long)idx.cells_by_dim[p].size();

    for (int p = 0; p < top; ++p) {
        std::map<long, int> lower_pos;
        for (size_t t = 0; t < idx.cells_by_dim[p].size(); ++t)
            lower_pos[x.cells[idx.cells_by_dim[p][t]].id] = (int)t;
        IntMat d = IntMat::Zero(co.ranks[p + 1], co.ranks[p]);
        for (size_t t = 0; t < idx.cells_by_dim[p + 1].size(); ++t) {
            for (auto& s : detail::coboundary_steps(idx, idx.cells_by_dim[p + 1][t], rep, m)) {
                auto it = lower_pos.find(s.lower);
                if (it == lower_pos.end())
                    throw invalid_input("boundary entry in the wrong dimension near cell " +
                                        std::to_string(x.cells[idx.cells_by_dim[p + 1][t]].id));
                d.block(m * (Eigen::Index)t, m * (Eigen::Index)it->second, m, m) +=
                    Int(s.sign) * s.hol;
            }
        }
        co.d[p] = d;
    }
    co.d[top] = IntMat::Zero(0, co.ranks[top]);

    if (!squares_to_zero(co))
        throw internal_error("twisted coboundary failed to square to zero");
    return co;
}

GroupPresentation pi1_presentation(const OrbitComplex& x) {
    ComplexIndex idx(x);
    if (!idx.connected()) throw invalid_input("fundamental group of a disconnected complex");

    GroupPresentation p;
    std::map<long, int> gen_of; // edge id -> 1-based generator index
    if (idx.cells_by_dim.size() > 1)
        for (int ci : idx.cells_by_dim[1]) {
            long e = x.cells[ci].id;
            if (idx.is_tree_edge(e)) continue;
            gen_of[e] = ++p.generators;
            p.generator_edges.push_back(e);
        }

    if (idx.cells_by_dim.size() > 2)
        for (int ci : idx.cells_by_dim[2]) {
            std::vector<int> word;
            for (auto& [e, dir] : idx.attaching_walk(ci)) {
                auto it = gen_of.find(e);
                if (it == gen_of.end()) continue; // tree edges die
                word.push_back(dir * it->second);
            }
            p.relators.push_back(word);
        }
    return p;
}

static void free_reduce(std::vector<int>& w) {
    std::vector<int> out;
    for (int s : w) {
        if (!out.empty() && out.back() == -s) out.pop_back();
        else out.push_back(s);
    }
    /* cyclic reduction */
    size_t a = 0, b = out.size();
    while (b - a >= 2 && out[a] == -out[b - 1]) { ++a; --b; }
    w.assign(out.begin() + a, out.begin() + b);
}

GroupPresentation tietze_reduce(const GroupPresentation& p) {
    GroupPresentation q = p;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& w : q.relators) free_reduce(w);
        q.relators.erase(std::remove_if(q.relators.begin(), q.relators.end(),
                                        [](const std::vector<int>& w) { return w.empty(); }),
                         q.relators.end());
        /* a length-1 relator kills its generator */
        int dead = 0;
        for (auto& w : q.relators)
            if (w.size() == 1) { dead = std::abs(w[0]); break; }
        if (!dead) break;
        changed = true;
        std::vector<std::vector<int>> relators;
        for (auto& w : q.relators) {
            std::vector<int> nw;
            for (int s : w) {
                int a = std::abs(s);
                if (a == dead) continue; // the generator is trivial now
                nw.push_back(s > 0 ? (a > dead ? s - 1 : s) : (a > dead ? s + 1 : s));
            }
            relators.push_back(nw); // empties are swept on the next pass
        }
        q.relators = std::move(relators);
        if ((int)q.generator_edges.size() >= dead)
            q.generator_edges.erase(q.generator_edges.begin() + (dead - 1));
        --q.generators;
    }
    return q;
}

bool trivially_trivial(const GroupPresentation& p) {
    return tietze_reduce(p).generators == 0;
}

AbelianGroup abelianization(const GroupPresentation& p) {
    IntMat e = IntMat::Zero(p.generators, (Eigen::Index)p.relators.size());
    for (size_t r = 0; r < p.relators.size(); ++r)
        for (int s : p.relators[r])
            e(std::abs(s) - 1, (Eigen::Index)r) += (s > 0 ? 1 : -1);
    return quotient_group(p.generators, e);
}

std::string GroupPresentation::to_string() const {
    if (generators == 0) return "<trivial>";
    std::ostringstream os;
    os << "<";
    for (int g = 1; g <= generators; ++g) os << (g > 1 ? ", " : "") << "g" << g;
    if (!relators.empty()) {
        os << " | ";
        for (size_t r = 0; r < relators.size(); ++r) {
            if (r) os << ", ";
            if (relators[r].empty()) { os << "1"; continue; }
            for (size_t t = 0; t < relators[r].size(); ++t) {
                int s = relators[r][t];
                os << (t ? " " : "") << "g" << std::abs(s) << (s < 0 ? "^-1" : "");
            }
        }
    }
    os << ">";
    return os.str();
}

} // namespace qtor
