#pragma once

#include "isodg/geometry.hpp"

namespace isodg {

// Kite graph of an isoradial Delaunay graph, rescaled so every rhombus has
// unit side.  Vertices are indexed 0..nb-1 for black (graph) vertices and
// nb..nb+nf-1 for white (face center) vertices.  Each two-sided edge of the
// base graph carries one rhombus u, w_left, v, w_right; its sides are
// numbered 0:(u,w_l) 1:(v,w_l) 2:(v,w_r) 3:(u,w_r), with {0,2} and {1,3}
// the two parallel tie pairs.
struct RhombicGraph {
  PolyhedralGraph g;  // rescaled copy, R_cr = 1
  int nb = 0;         // number of black vertices

  int n_vertices() const { return nb + g.n_faces(); }
  bool is_black(int i) const { return i < nb; }
  cplx pos(int i) const {
    return i < nb ? g.z[i] : g.fgeo[i - nb].center;
  }
};

// Moment data of a black-to-black path.
struct PathMoments {
  int u = -1, v = -1;        // endpoints (graph vertex indices)
  std::vector<cplx> steps;   // unit step phases
  std::vector<cplx> p;       // p[d] = p_{2d+1}
  std::vector<std::pair<double, int>> theta;  // separating angles, counts

  cplx p_n(int n) const { return p[(n - 1) / 2]; }
};

RhombicGraph build_rhombic(const PolyhedralGraph& graph);

// Shortest alternating black/white vertex sequence from u to v (empty if
// u == v).  Throws Disconnected.
std::vector<int> find_path(const RhombicGraph& rg, int u, int v);

// Odd moments p_n for n <= max_n plus the separating angles of the path's
// endpoints.  Antiparallel step phases cancel in pairs, so the surviving
// directed counts depend only on the endpoints.
PathMoments path_moments(const RhombicGraph& rg, const std::vector<int>& path,
                         int max_n);

// Maximal run of rhombi glued along parallel sides through the given edge's
// rhombus, truncated at the window boundary.  Returns base-graph edge
// indices in track order.
std::vector<int> train_track(const RhombicGraph& rg, int edge, int side);

// Separating angle set of (u, v) with multiplicities, reduced into
// (theta0 - pi, theta0 + pi] around the direction theta0 of p1.
std::vector<std::pair<double, int>> separating_angles(const RhombicGraph& rg,
                                                      int u, int v);

}  // namespace isodg
