#include "isodg/green.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "isodg/operators.hpp"

namespace isodg {

namespace {

double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(19, 1.0);
    for (int k = 1; k < 19; ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  return table[n];
}

// partitions of m as descending part lists
std::vector<std::vector<int>> partition_lists(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int maxp) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rem, maxp); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  rec(m, m);
  return out;
}

}  // namespace

cplx discrete_exponential(const PathMoments& pm, cplx w) {
  cplx out = 1.0;
  for (const auto& [ang, mult] : pm.theta) {
    cplx ph = std::polar(1.0, ang);
    if (std::abs(w - ph) <= 1e-12)
      throw Error("PoleHit", "evaluation point collides with a step phase");
    out *= std::pow((w + ph) / (w - ph), static_cast<double>(mult));
  }
  return out;
}

double green_from_moments(const PathMoments& pm) {
  if (pm.theta.empty()) return 0.0;
  double lo = pm.theta.front().first, hi = pm.theta.back().first;
  if (hi - lo >= kPi - 1e-12)
    throw Error("WindowTooSmall",
                "degenerate separating direction; enlarge the window");
  double mid = 0.5 * (lo + hi);

  struct Cls {
    cplx phase;
    double mult;
  };
  std::vector<Cls> cls;
  cls.reserve(pm.theta.size());
  cplx p1_rot{};
  for (const auto& [ang, mult] : pm.theta) {
    cls.push_back({std::polar(1.0, ang - mid), static_cast<double>(mult)});
    p1_rot += cls.back().mult * cls.back().phase;
  }
  // every rotated phase has Re > 0, so w = -t stays clear of all poles and
  // |E(-t)| < 1 on t > 0
  auto f = [&](double t) {
    if (t <= 0.0) return -2.0 * p1_rot.real();  // limit of (Re E(-t) - 1)/t
    cplx e = 1.0;
    for (const auto& c : cls) e *= std::pow((-t + c.phase) / (-t - c.phase), c.mult);
    return (e.real() - 1.0) / t;
  };
  return integrate_adaptive(f, 0.0, 1.0, 1e-12) / kTwoPi;
}

double green(const RhombicGraph& rg, int u, int v) {
  if (u < 0 || v < 0 || u >= rg.nb || v >= rg.nb)
    throw Error("BadInput", "endpoints must be vertices of the Delaunay graph");
  if (u == v) return 0.0;
  std::vector<int> path;
  try {
    path = find_path(rg, u, v);
  } catch (const Error& e) {
    if (e.code == "Disconnected")
      throw Error("WindowTooSmall",
                  "no rhombic path between the endpoints; enlarge the window");
    throw;
  }
  return green_from_moments(path_moments(rg, path, 1));
}

std::pair<double, GreenSeries> green_asymptotic(const PathMoments& pm,
                                                int order) {
  if (order < 0 || order > 6)
    throw Error("BadInput", "series order must be between 0 and 6");
  if (pm.theta.empty())
    throw Error("BadInput", "series expansion needs distinct endpoints");
  if (static_cast<int>(pm.p.size()) < order + 1)
    throw Error("BadInput", "path moments truncated below the requested order");

  GreenSeries gs;
  gs.order = order;
  gs.p1 = pm.p_n(1);
  for (int s = 1; s <= order; ++s)
    gs.u.push_back(pm.p[s] / (static_cast<double>(2 * s + 1) * gs.p1));
  gs.c.assign(order, {});
  for (int m = 1; m <= order; ++m) {
    gs.c[m - 1].assign(m, cplx{});
    for (const auto& parts : partition_lists(m)) {
      int d = static_cast<int>(parts.size());
      cplx prod = 1.0;
      int run = 1;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        run = (i > 0 && parts[i] == parts[i - 1]) ? run + 1 : 1;
        prod *= gs.u[parts[i] - 1] / static_cast<double>(run);
      }
      gs.c[m - 1][d - 1] += prod;
    }
  }

  double corr = 0.0;
  const cplx inv2 = 1.0 / (4.0 * gs.p1 * gs.p1);  // (2 p1)^{-2}
  cplx ip = 1.0;
  for (int m = 1; m <= order; ++m) {
    ip *= inv2;
    for (int d = 1; d <= m; ++d) {
      double sgn = (d % 2) ? -1.0 : 1.0;
      corr += sgn * factorial(2 * m + d - 1) * (gs.c[m - 1][d - 1] * ip).real();
    }
  }
  double value =
      -(std::log(2.0 * std::abs(gs.p1)) + kEulerGamma - corr) / kTwoPi;
  return {value, gs};
}

GreenEvaluator::GreenEvaluator(const PolyhedralGraph& g_cr)
    : rg_(build_rhombic(g_cr)) {
  const auto& k = rg_.g.kind;
  by_displacement_ =
      (k == "square" || k == "triangular" || k == "quad_tiling");
}

std::uint64_t GreenEvaluator::key(int u, int v) const {
  if (!by_displacement_)
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  const auto &a = rg_.g.lattice_coords[u], &b = rg_.g.lattice_coords[v];
  std::uint64_t dm = static_cast<std::uint32_t>(b[0] - a[0] + 32768);
  std::uint64_t dn = static_cast<std::uint32_t>(b[1] - a[1] + 32768);
  return static_cast<std::uint64_t>(a[2]) | (static_cast<std::uint64_t>(b[2]) << 1) |
         (dm << 2) | (dn << 18);
}

double GreenEvaluator::eval(int u, int v) const {
  if (u < 0 || v < 0 || u >= rg_.nb || v >= rg_.nb)
    throw Error("BadInput", "endpoints must be vertices of the Delaunay graph");
  if (u == v) return 0.0;
  const std::uint64_t k = key(u, v);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
  }
  double val = green(rg_, u, v);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, fresh] = cache_.emplace(k, val);
    if (fresh) ++misses_;
  }
  return val;
}

double green_residual(const PolyhedralGraph& g, int source) {
  if (source < 0 || source >= g.n_vertices())
    throw Error("BadInput", "source vertex out of range");
  GreenEvaluator ev(g);
  const int n = g.n_vertices();
  Eigen::VectorXcd G(n);
  // vertices on no face have empty Laplacian rows and never enter an
  // interior stencil, so their Green value is irrelevant (and unreachable)
  parallel_for(n, [&](int begin, int end) {
    for (int v = begin; v < end; ++v)
      G[v] = g.vfaces[v].empty() ? cplx{} : cplx(ev.eval(source, v), 0.0);
  });
  Eigen::VectorXcd r = beltrami(g).m * G;
  double worst = 0.0;
  for (int w = 0; w < n; ++w) {
    if (!g.interior[w]) continue;
    cplx want = (w == source) ? cplx(1.0, 0.0) : cplx{};
    worst = std::max(worst, std::abs(r[w] - want));
  }
  return worst;
}

}  // namespace isodg
