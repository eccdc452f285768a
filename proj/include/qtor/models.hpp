#pragma once
#include "qtor/orbit.hpp"
#include <array>
#include <random>

namespace qtor {

/* interval base, n = 1, both endpoint charvecs (1): the quaternionic
   projective line; subdiv >= 1 interior edges */
OrbitComplex make_interval(int subdiv = 1);

/* triangle base, n = 2, fan (1,0), (0,1), (-1,-1): quaternionic projective
   plane */
OrbitComplex make_triangle();

/* square base, n = 2, fan (1,0), (0,1), (-1,0), (0,-1): a disk orbit space */
OrbitComplex make_square();

/* circle base, no facets, torus rank n, optional holonomy around the loop
   (identity when not given); cells >= 1 vertices/edges around the circle,
   holonomy sits on the closing edge */
OrbitComplex make_circle(int n, int cells = 1, const IntMat* hol = nullptr);

/* convex polygon base, n = 2: fan of cyclically unimodular charvecs, one
   2-cell, optional per-edge subdivision counts (extra cells inside facets) */
OrbitComplex make_polygon(const std::vector<std::array<long, 2>>& fan,
                          const std::vector<int>& subdiv = {});

/* closed orientable genus-g surface base (one vertex, 2g loops, one 2-cell),
   no facets, torus rank n; optional holonomies per loop edge (must make the
   surface relator act trivially, e.g. commuting pairs) */
OrbitComplex make_surface(int genus, int n,
                          const std::vector<IntMat>& loop_holonomy = {});

/* cube base, n = 3, facet charvecs +-e_i */
OrbitComplex make_cube();

/* a valid complex from one of the families above with randomized parameters;
   <= 30 cells, n <= 3 */
OrbitComplex random_complex(std::mt19937_64& rng);

} // namespace qtor
