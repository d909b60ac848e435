#pragma once

#include "isodg/geometry.hpp"

namespace isodg {

// Recipe for an isoradial lattice window.  `window` is the half-width of the
// core in lattice cells; one extra ring of cells is always generated and its
// outermost vertices are flagged as halo so that every core face has
// two-sided angle data on all of its edges.
struct LatticeSpec {
  std::string kind;  // square | triangular | quad_tiling | custom_rhombic
  int window = 4;
  std::vector<double> alpha;  // quad_tiling: fundamental quadrilateral angles
  std::vector<double> beta;   // custom_rhombic: horizontal step angles
  std::vector<double> gamma;  // custom_rhombic: vertical step angles
};

// Chordless Delaunay graph of a finite point set: incremental insertion with
// circumdisk cavities, then cocyclic faces are merged.
PolyhedralGraph delaunay_from_points(const std::vector<cplx>& points);

// Isoradial Delaunay window with unit circumradius.
PolyhedralGraph generate_lattice(const LatticeSpec& spec);

// Subdivide every k-gon face (k > 3) by a fan of chords from its
// lowest-id vertex.
PolyhedralGraph complete_to_triangulation(const PolyhedralGraph& g);

}  // namespace isodg
