#pragma once

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isodg/rhombic.hpp"

namespace isodg {

// Coefficient data of the large-distance expansion of the lattice Green's
// function between two endpoints, derived from the odd path moments.
struct GreenSeries {
  cplx p1{};
  std::vector<cplx> u;               // u[s-1] = p_{2s+1} / ((2s+1) p1)
  std::vector<std::vector<cplx>> c;  // c[m-1][d-1] partition sums, d <= m
  double euler = kEulerGamma;
  int order = 0;
};

// prod_j (w + e^{i theta_j}) / (w - e^{i theta_j}) over the reduced angle
// classes of the path (cancelling antiparallel pairs contribute 1, so the
// reduction is exact). Throws PoleHit when w is within 1e-12 of a phase.
cplx discrete_exponential(const PathMoments& pm, cplx w);

// Green's function of the unit-isoradius Laplacian between the endpoints of
// the path behind `pm`:
//   (1/2pi) Re int_0^1 (E(-t) - 1) dt/t
// evaluated after rotating the frame so the angle classes sit in an interval
// of width < pi centred at 0 (keeps every pole off the ray of integration).
// Coincident endpoints give 0. Quadrature is adaptive to 1e-12 absolute.
double green_from_moments(const PathMoments& pm);

// Same, for two vertices of the Delaunay graph underlying `rg`.
// Throws WindowTooSmall when no rhombus path joins them.
double green(const RhombicGraph& rg, int u, int v);

// Series value at the given order M (0..6) together with its coefficients:
//   -(1/2pi) [ log(2|p1|) + euler
//              - sum_{m>=d>=1, m<=M} (-1)^d (2m+d-1)! Re( c_{m,d} (2p1)^{-2m} ) ]
// Every term is invariant under global rotation of the frame. Requires the
// moments to carry p_1 .. p_{2M+1}.
std::pair<double, GreenSeries> green_asymptotic(const PathMoments& pm,
                                                int order);

// Caches Green values, keyed by lattice displacement on the generated
// periodic families (translation invariance) and by vertex pair otherwise.
// Safe to call from several threads.
class GreenEvaluator {
 public:
  explicit GreenEvaluator(const PolyhedralGraph& g_cr);
  const RhombicGraph& rhombic() const { return rg_; }
  double eval(int u, int v) const;
  std::size_t cache_misses() const { return misses_; }

 private:
  std::uint64_t key(int u, int v) const;
  RhombicGraph rg_;
  bool by_displacement_ = false;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, double> cache_;
  mutable std::size_t misses_ = 0;
};

// max over interior rows w of |(Laplacian G_source)(w) - delta_{source,w}|,
// with G_source evaluated by quadrature at every vertex of the window.
double green_residual(const PolyhedralGraph& g, int source);

}  // namespace isodg
