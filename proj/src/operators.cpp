#include "isodg/operators.hpp"

#include <cmath>
#include <unordered_set>
#include <vector>

namespace isodg {

namespace {

void require_triangles(const PolyhedralGraph& g) {
  for (const auto& f : g.faces)
    if (f.size() != 3)
      throw Error("BadInput", "operator needs a triangulation; complete "
                              "non-triangular faces first");
}

double north_angle(const PolyhedralGraph& g, int face, cplx zu, cplx zv) {
  const cplx c = g.fgeo[face].center;
  return 0.5 * wrap_angle(std::arg(c - zu) - std::arg(zv - c));
}

bool edge_is_chord(const PolyhedralGraph& g, const PolyhedralGraph::Edge& e) {
  return e.f_left >= 0 && e.f_right >= 0 &&
         std::abs(g.fgeo[e.f_left].center - g.fgeo[e.f_right].center) <=
             tol_geom;
}

SparseOperator gradient(const PolyhedralGraph& tri, bool bar) {
  require_triangles(tri);
  SparseOperator op;
  op.row_space = Space::faces;
  op.col_space = Space::vertices;
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(3 * tri.n_faces());
  for (int f = 0; f < tri.n_faces(); ++f) {
    const double a = tri.fgeo[f].area;
    if (!(a > 0.0))
      throw Error("DegenerateFace",
                  "face " + std::to_string(f) + " has nonpositive area");
    const auto& cyc = tri.faces[f];
    for (int k = 0; k < 3; ++k) {
      cplx coeff = cplx(0, 1) *
                   (std::conj(tri.z[cyc[(k + 1) % 3]]) -
                    std::conj(tri.z[cyc[(k + 2) % 3]])) /
                   (4.0 * a);
      trip.emplace_back(f, cyc[k], bar ? std::conj(coeff) : coeff);
    }
  }
  op.m.resize(tri.n_faces(), tri.n_vertices());
  op.m.setFromTriplets(trip.begin(), trip.end());
  return op;
}

// Shared Laplace-type assembly: `weight` maps a directed two-sided or
// one-sided edge to its complex half-weights (north, south); entries are
// -(w_n + w_s) with the Hermitian transpose on the reversed edge.
template <class F>
SparseOperator assemble(const PolyhedralGraph& g, F&& weight) {
  SparseOperator op;
  op.hermitian = true;
  std::vector<Eigen::Triplet<cplx>> trip;
  std::vector<cplx> diag(g.n_vertices(), cplx{});
  for (const auto& e : g.edges) {
    if (edge_is_chord(g, e)) continue;
    cplx w = weight(e);
    if (w == cplx{}) continue;
    trip.emplace_back(e.u, e.v, -w);
    trip.emplace_back(e.v, e.u, -std::conj(w));
    diag[e.u] += w;
    diag[e.v] += std::conj(w);
  }
  for (int v = 0; v < g.n_vertices(); ++v)
    if (diag[v] != cplx{}) trip.emplace_back(v, v, diag[v]);
  op.m.resize(g.n_vertices(), g.n_vertices());
  op.m.setFromTriplets(trip.begin(), trip.end());
  return op;
}

}  // namespace

SparseOperator nabla(const PolyhedralGraph& tri) { return gradient(tri, false); }

SparseOperator nabla_bar(const PolyhedralGraph& tri) {
  return gradient(tri, true);
}

SpMat area_diagonal(const PolyhedralGraph& g) {
  SpMat d(g.n_faces(), g.n_faces());
  d.reserve(Eigen::VectorXi::Constant(g.n_faces(), 1));
  for (int f = 0; f < g.n_faces(); ++f) d.insert(f, f) = g.fgeo[f].area;
  d.makeCompressed();
  return d;
}

SpMat radius_diagonal(const PolyhedralGraph& g) {
  SpMat d(g.n_faces(), g.n_faces());
  d.reserve(Eigen::VectorXi::Constant(g.n_faces(), 1));
  for (int f = 0; f < g.n_faces(); ++f) d.insert(f, f) = g.fgeo[f].radius;
  d.makeCompressed();
  return d;
}

SparseOperator beltrami(const PolyhedralGraph& g) {
  return assemble(g, [&](const PolyhedralGraph::Edge& e) -> cplx {
    double w = 0.0;
    if (e.f_left >= 0)
      w += 0.5 * std::tan(north_angle(g, e.f_left, g.z[e.u], g.z[e.v]));
    if (e.f_right >= 0)
      w += 0.5 * std::tan(north_angle(g, e.f_right, g.z[e.v], g.z[e.u]));
    return w;
  });
}

SparseOperator conformal(const PolyhedralGraph& g) {
  return assemble(g, [&](const PolyhedralGraph::Edge& e) -> cplx {
    if (e.f_left >= 0 && e.f_right >= 0) {
      double tn = north_angle(g, e.f_left, g.z[e.u], g.z[e.v]);
      double ts = north_angle(g, e.f_right, g.z[e.v], g.z[e.u]);
      return std::tan(0.5 * (tn + ts));
    }
    if (e.f_left >= 0)
      return 0.5 * std::tan(north_angle(g, e.f_left, g.z[e.u], g.z[e.v]));
    return 0.5 * std::tan(north_angle(g, e.f_right, g.z[e.v], g.z[e.u]));
  });
}

SparseOperator kahler(const PolyhedralGraph& g) {
  return assemble(g, [&](const PolyhedralGraph::Edge& e) -> cplx {
    cplx w{};
    if (e.f_left >= 0) {
      double r = g.fgeo[e.f_left].radius;
      w += 0.5 *
           cplx(std::tan(north_angle(g, e.f_left, g.z[e.u], g.z[e.v])), 1.0) /
           (r * r);
    }
    if (e.f_right >= 0) {
      double r = g.fgeo[e.f_right].radius;
      w += 0.5 *
           cplx(std::tan(north_angle(g, e.f_right, g.z[e.v], g.z[e.u])),
                -1.0) /
           (r * r);
    }
    return w;
  });
}

std::pair<cplx, cplx> greens_theorem_check(const PolyhedralGraph& tri,
                                           const std::vector<int>& region,
                                           const std::vector<cplx>& phi) {
  if (phi.size() != static_cast<std::size_t>(tri.n_vertices()))
    throw Error("BadInput", "phi must be a vertex function");
  std::unordered_set<int> in(region.begin(), region.end());
  cplx lhs{}, rhs{};
  const cplx quarter_i = cplx(0, 1) / 4.0;
  for (int f : region) {
    const auto& cyc = tri.faces[f];
    if (cyc.size() != 3)
      throw Error("BadInput", "region faces must be triangles");
    // A(f) nabla phi: the area cancels against the 1/(4A) in the row
    lhs += quarter_i * (phi[cyc[0]] * (std::conj(tri.z[cyc[1]]) -
                                       std::conj(tri.z[cyc[2]])) +
                        phi[cyc[1]] * (std::conj(tri.z[cyc[2]]) -
                                       std::conj(tri.z[cyc[0]])) +
                        phi[cyc[2]] * (std::conj(tri.z[cyc[0]]) -
                                       std::conj(tri.z[cyc[1]])));
    for (int k = 0; k < 3; ++k) {
      int a = cyc[k], b = cyc[(k + 1) % 3];
      int ei = tri.find_edge(a, b);
      const auto& e = tri.edges[ei];
      int other = (a == e.u) ? e.f_right : e.f_left;
      if (other >= 0 && in.count(other)) continue;  // interior to the region
      rhs += quarter_i * (std::conj(tri.z[b]) - std::conj(tri.z[a])) *
             (phi[b] + phi[a]);
    }
  }
  return {lhs, rhs};
}

SpMat restrict_to(const SpMat& m, const std::vector<int>& keep) {
  std::vector<int> pos(m.rows(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int col = 0; col < m.outerSize(); ++col)
    for (SpMat::InnerIterator it(m, col); it; ++it) {
      if (pos[it.row()] < 0 || pos[it.col()] < 0) continue;
      trip.emplace_back(pos[it.row()], pos[it.col()], it.value());
    }
  SpMat out(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace isodg
