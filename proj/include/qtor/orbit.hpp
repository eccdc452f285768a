#pragma once
#include "qtor/matrix.hpp"
#include "qtor/chain.hpp"
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qtor {

struct Cell {
    long id = 0;
    int dim = 0;
    long face = 0;
    /* (cell id, coefficient) pairs. For 1-cells: exactly one +1 (head) and
       one -1 (tail) entry. For 2-cells the list is ordered and read as the
       attaching walk: (edge, +1) traverses forward, (edge, -1) backward.
       For other dimensions the pairs are plain incidence numbers. */
    std::vector<std::pair<long, int>> boundary;
};

struct Face {
    long id = 0;
    int dim = 0;
    std::vector<long> facets;
};

struct Facet {
    long id = 0;
    IntVec charvec;
};

struct Monodromy {
    bool present = false;
    std::vector<long> tree;         // 1-cell ids; empty = choose a BFS tree
    std::map<long, IntMat> matrices; // non-tree 1-cell id -> GL(n,Z)
};

struct OrbitComplex {
    int torus_rank = 0;
    bool euler_class_zero = true;
    std::vector<Cell> cells;
    std::vector<Face> faces;
    std::vector<Facet> facets;
    Monodromy monodromy;
    std::string orientation; // opaque metadata, carried through

    bool has_nontrivial_monodromy() const;
    int max_cell_dim() const;
};

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const OrbitComplex& x);

/* index structure shared by the homology/spectral layers; construction throws
   invalid_input on malformed references, so run validate() first for reports */
struct ComplexIndex {
    const OrbitComplex* x;
    std::map<long, int> cell_pos;  // id -> index into x->cells
    std::map<long, int> face_pos;
    std::map<long, int> facet_pos;
    std::vector<std::vector<int>> cells_by_dim; // cell indices per dimension
    int max_dim = 0;
    long base_vertex = -1;                 // lowest-id 0-cell, -1 if none
    std::map<long, std::pair<long, long>> edge_ends; // edge id -> (tail id, head id)
    std::vector<long> tree_edges;          // spanning forest, sorted ids
    std::map<long, IntMat> edge_matrix;    // holonomy per non-tree edge (n x n)

    explicit ComplexIndex(const OrbitComplex& ox);

    bool is_tree_edge(long e) const;
    const IntMat* matrix_of(long e) const; // nullptr = identity
    bool connected() const;

    /* lowest-id 0-cell in the closure of the cell, -1 when the closure has none */
    long anchor_vertex(int cell_index) const;

    /* attaching walk of a 2-cell as (edge id, direction) steps, verified to
       chain and close; rotated to start at the anchor vertex */
    std::vector<std::pair<long, int>> attaching_walk(int cell_index) const;

    /* signed incidence count of e in the boundary of cell (walk-aware for 2-cells) */
    std::map<long, Int> incidence_of(int cell_index) const;

    /* untwisted cellular chain complex over Z */
    IntChainComplex chain_complex() const;
    IntCochainComplex cochain_complex() const;
};

/* basis (rows) of {u in Z^n : <u, charvec(f)> = 0 for all facets f of the face};
   saturated; throws invalid_input when the face is unknown */
IntMat ann_lattice(const OrbitComplex& x, long face_id);

/* product of edge holonomies along a closed edge path at the base vertex;
   "A then B" composes to B*A; direction of each edge is inferred from the
   current endpoint (forward preferred for self-loops) */
IntMat holonomy(const OrbitComplex& x, const std::vector<long>& loop_edges);

} // namespace qtor
