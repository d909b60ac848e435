#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "isodg/numeric.hpp"

namespace isodg {

// Per-face cached geometry: circumcenter, circumradius, area, and the
// edge-phase sums C(f) = sum conj(dz)/dz and C2(f) = sum (conj(dz)/dz)^2
// over the counter-clockwise boundary.
struct FaceGeometry {
  cplx center;
  double radius = 0.0;
  double area = 0.0;
  cplx C1;
  cplx C2;
};

// Angles of one oriented edge (u, v). North is the face to the left of
// u -> v, i.e. the face whose ccw cycle contains (u, v) consecutively.
struct EdgeGeometry {
  double theta_n = 0.0;
  double theta_s = 0.0;
  double theta = 0.0;  // (theta_n + theta_s) / 2, orientation-independent
  double R_n = 0.0;
  double R_s = 0.0;
  int f_n = -1;
  int f_s = -1;
  bool is_chord = false;
};

struct ValidationIssue {
  std::string kind;  // "circumdisk", "cocyclic_extra", "chord", "isoradius",
                     // "crossing", "face_orientation", "cocyclicity"
  int face = -1;
  int vertex = -1;
  int edge = -1;
  double magnitude = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::string mode;
  std::vector<ValidationIssue> issues;
};

// Embedded planar graph with cyclic-polygon faces. Vertices are contiguous
// internal indices; `ext_id` keeps the external ids used in files. Faces are
// ccw vertex cycles; only interior faces are stored (no outer face), so
// boundary edges have exactly one incident face.
struct PolyhedralGraph {
  std::vector<cplx> z;
  std::vector<int> ext_id;
  std::unordered_map<int, int> index_of_id;
  std::vector<std::vector<int>> faces;

  // optional metadata
  double isoradius = 0.0;  // 0 = unspecified
  std::string kind;
  std::vector<std::array<int, 3>> lattice_coords;  // per-vertex (m, n, sub)
  std::vector<char> halo;                          // per-vertex margin flag

  // derived, filled by finalize()
  struct Edge {
    int u, v;        // u < v
    int f_left;      // face containing (u, v) ccw-consecutively, -1 if none
    int f_right;     // face containing (v, u), -1 if none
  };
  std::vector<Edge> edges;
  std::unordered_map<long long, int> edge_of;  // key = u * 2^32 + v, u < v
  std::vector<FaceGeometry> fgeo;
  std::vector<std::vector<int>> vfaces;
  std::vector<std::vector<int>> vedges;
  std::vector<std::vector<int>> vneigh;
  std::vector<char> interior;  // vertex flag: every incident edge has 2 faces

  int n_vertices() const { return static_cast<int>(z.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  static long long edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<long long>(u) << 32) | static_cast<unsigned>(v);
  }
  int find_edge(int u, int v) const {
    auto it = edge_of.find(edge_key(u, v));
    return it == edge_of.end() ? -1 : it->second;
  }
};

// (center, radius, area) of a ccw cyclic polygon given by >= 3 vertices.
// Throws CollinearFace / NonCocyclic.
struct CircumData {
  cplx center;
  double radius;
  double area;
};
CircumData circumdata(const std::vector<cplx>& pts);

// Build a graph from external-id vertices and faces; derives edges,
// face geometry and adjacency, and checks embedding invariants
// (injectivity, ccw cyclic faces, manifold edges; optional edge-crossing
// scan, on by default).
PolyhedralGraph make_graph(const std::vector<int>& ids,
                           const std::vector<cplx>& coords,
                           const std::vector<std::vector<int>>& face_id_cycles,
                           double isoradius = 0.0,
                           bool check_crossings = true);

// Recompute the derived fields of g in place (after editing faces).
void finalize_graph(PolyhedralGraph& g, bool check_crossings = true);

// Angles of the oriented edge (u, v) (internal indices). The north angle is
// computed from the circumcenter of the north face:
//   theta_n = (arg(z(f) - z_u) - arg(z_v - z(f))) / 2, wrapped to (-pi/2, pi/2].
// Throws BoundaryEdge if either side face is missing.
EdgeGeometry edge_angles(const PolyhedralGraph& g, int u, int v);

// North angle of (u, v) computed from a third vertex w of the north face via
// the log-cross-ratio; used for the inscribed-angle independence check.
double theta_n_from_vertex(const PolyhedralGraph& g, int u, int v, int w);

// 4*pi - 2 * sum over boundary edges of (pi - 2 theta(e)). Throws
// BoundaryFace if any boundary edge lacks a side face.
double face_curvature(const PolyhedralGraph& g, int face);

// Remove all chords (edges whose two faces share a circumcircle), merging
// faces across them. Idempotent; triangulations without chords pass through.
PolyhedralGraph regularize(const PolyhedralGraph& g);

// mode: "delaunay", "weak_delaunay", or "isoradial".
ValidationReport validate(const PolyhedralGraph& g, const std::string& mode);

}  // namespace isodg
