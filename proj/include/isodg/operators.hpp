#pragma once

#include <Eigen/SparseCore>
#include <utility>
#include <vector>

#include "isodg/geometry.hpp"

namespace isodg {

using SpMat = Eigen::SparseMatrix<cplx>;

enum class Space { vertices, faces };

// Sparse linear operator between vertex- and face-function spaces. Real
// operators are kept in complex storage; assemblers guarantee |Im| < 1e-12
// entrywise where the flag says so.
struct SparseOperator {
  Space row_space = Space::vertices;
  Space col_space = Space::vertices;
  bool hermitian = false;
  SpMat m;
};

// Discrete derivative, faces x vertices, defined on triangulations:
// row f has entry i (conj z_{k+1} - conj z_{k+2}) / (4 A(f)) at vertex v_k,
// so that nabla z = 1 and nabla conj(z) = 0 on every face. nabla_bar is the
// entrywise conjugate. Throws DegenerateFace on a nonpositive face area and
// BadInput when some face is not a triangle.
SparseOperator nabla(const PolyhedralGraph& tri);
SparseOperator nabla_bar(const PolyhedralGraph& tri);

// Diagonal face operators (faces x faces).
SpMat area_diagonal(const PolyhedralGraph& g);
SpMat radius_diagonal(const PolyhedralGraph& g);

// Laplace-type operators on vertex functions, assembled edge by edge from
// the circumcenter angles. Edge weights:
//   beltrami   (tan th_n + tan th_s) / 2
//   conformal  tan((th_n + th_s) / 2)
//   kahler     ((tan th_n + i)/R_n^2 + (tan th_s - i)/R_s^2) / 2
// Chord edges (coincident circumcenters) get weight exactly zero. One-sided
// window-boundary edges carry only the half-weight of their present face,
// which makes the factorizations
//   beltrami = 2 (nabla_bar^T A nabla + nabla^T A nabla_bar)
//   kahler   = 4 nabla_bar^T (A/R^2) nabla
// hold entrywise on finite windows for any completion of the graph.
SparseOperator beltrami(const PolyhedralGraph& g);
SparseOperator conformal(const PolyhedralGraph& g);
SparseOperator kahler(const PolyhedralGraph& g);

// Both sides of the discrete Green identity over a set of triangular faces:
//   sum_{f in region} A(f) nabla phi (f)
//     = (i/4) sum_{(u,v) in boundary} (conj z_v - conj z_u) (phi_v + phi_u)
// where boundary edges (u,v) keep the region on their left (counter-clockwise
// traversal; phi = z on a single ccw face recovers +A(f) on both sides).
// Returns (lhs, rhs).
std::pair<cplx, cplx> greens_theorem_check(const PolyhedralGraph& tri,
                                           const std::vector<int>& region,
                                           const std::vector<cplx>& phi);

// Principal submatrix of m on the given strictly increasing index list
// (Dirichlet truncation when `keep` lists the retained vertices).
SpMat restrict_to(const SpMat& m, const std::vector<int>& keep);

}  // namespace isodg
