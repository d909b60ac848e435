#include "isodg/rhombic.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace isodg {

RhombicGraph build_rhombic(const PolyhedralGraph& graph) {
  double r0 = graph.isoradius;
  if (r0 <= 0.0) {
    std::vector<double> radii;
    for (const auto& fg : graph.fgeo) radii.push_back(fg.radius);
    if (radii.empty()) throw Error("NotIsoradial", "graph has no faces");
    std::nth_element(radii.begin(), radii.begin() + radii.size() / 2,
                     radii.end());
    r0 = radii[radii.size() / 2];
  }
  for (int f = 0; f < graph.n_faces(); ++f)
    if (std::abs(graph.fgeo[f].radius - r0) > tol_geom)
      throw Error("NotIsoradial",
                  "face " + std::to_string(f) + " has off-radius " +
                      std::to_string(graph.fgeo[f].radius));
  for (const auto& e : graph.edges) {
    if (e.f_left < 0 || e.f_right < 0) continue;
    if (std::abs(graph.fgeo[e.f_left].center - graph.fgeo[e.f_right].center) <=
        tol_geom)
      throw Error("BadInput", "graph has chords; regularize first");
  }

  RhombicGraph rg;
  rg.g = graph;
  rg.nb = graph.n_vertices();
  if (std::abs(r0 - 1.0) > 1e-15) {
    double s = 1.0 / r0;
    for (auto& z : rg.g.z) z *= s;
    for (auto& fg : rg.g.fgeo) {
      fg.center *= s;
      fg.radius *= s;
      fg.area *= s * s;
    }
    rg.g.isoradius = 1.0;
  }
  return rg;
}

std::vector<int> find_path(const RhombicGraph& rg, int u, int v) {
  if (u == v) return {};
  int n = rg.n_vertices();
  std::vector<int> parent(n, -2);
  std::queue<int> q;
  parent[u] = -1;
  q.push(u);
  while (!q.empty() && parent[v] == -2) {
    int x = q.front();
    q.pop();
    if (rg.is_black(x)) {
      for (int f : rg.g.vfaces[x]) {
        int w = rg.nb + f;
        if (parent[w] == -2) {
          parent[w] = x;
          q.push(w);
        }
      }
    } else {
      for (int b : rg.g.faces[x - rg.nb]) {
        if (parent[b] == -2) {
          parent[b] = x;
          q.push(b);
        }
      }
    }
  }
  if (parent[v] == -2)
    throw Error("Disconnected", "no rhombic path between the endpoints");
  std::vector<int> path;
  for (int x = v; x != -1; x = parent[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

PathMoments path_moments(const RhombicGraph& rg, const std::vector<int>& path,
                         int max_n) {
  PathMoments pm;
  pm.p.assign(std::max(1, (max_n + 1) / 2), cplx{});
  if (path.empty()) return pm;  // coincident endpoints
  pm.u = path.front();
  pm.v = path.back();
  for (std::size_t j = 1; j < path.size(); ++j) {
    cplx step = rg.pos(path[j]) - rg.pos(path[j - 1]);
    double len = std::abs(step);
    if (std::abs(len - 1.0) > 1e-6)
      throw Error("BadInput", "path step is not a unit rhombus side");
    pm.steps.push_back(step / len);
  }
  int terms = static_cast<int>(pm.p.size());
  for (const cplx& s : pm.steps) {
    cplx s2 = s * s;
    cplx pw = s;
    for (int d = 0; d < terms; ++d) {
      pm.p[d] += pw;
      pw *= s2;
    }
  }

  // group the step directions by inclination (mod pi); antiparallel pairs
  // cancel and each surviving group is one separating angle
  cplx p1 = pm.p[0];
  double theta0 = std::arg(p1 == cplx{} ? cplx{1, 0} : p1);
  struct Dir {
    double incl;
    int sign;
  };
  std::vector<Dir> dirs;
  dirs.reserve(pm.steps.size());
  for (const cplx& s : pm.steps) {
    double a = std::arg(s);  // (-pi, pi]
    if (a >= kPi / 2)
      dirs.push_back({a - kPi, -1});
    else if (a < -kPi / 2)
      dirs.push_back({a + kPi, -1});
    else
      dirs.push_back({a, 1});
  }
  std::sort(dirs.begin(), dirs.end(),
            [](const Dir& x, const Dir& y) { return x.incl < y.incl; });
  const double tol = 1e-9;
  std::size_t i = 0;
  std::vector<std::pair<double, int>> groups;  // inclination, net count
  while (i < dirs.size()) {
    std::size_t j = i;
    int net = 0;
    while (j < dirs.size() && dirs[j].incl - dirs[i].incl <= tol) {
      net += dirs[j].sign;
      ++j;
    }
    if (net != 0) groups.emplace_back(dirs[i].incl, net);
    i = j;
  }
  // inclinations live on a circle of circumference pi; identifying the back
  // cluster with the front one shifts its representative by pi, so its net
  // count enters with opposite sign
  if (groups.size() >= 2 &&
      groups.front().first + kPi - groups.back().first <= tol) {
    groups.front().second -= groups.back().second;
    groups.pop_back();
    if (groups.front().second == 0) groups.erase(groups.begin());
  }
  for (auto [incl, net] : groups) {
    double angle = net > 0 ? incl : incl + kPi;
    angle = theta0 + wrap_angle(angle - theta0);
    pm.theta.emplace_back(angle, std::abs(net));
  }
  std::sort(pm.theta.begin(), pm.theta.end());
  return pm;
}

std::vector<int> train_track(const RhombicGraph& rg, int edge, int side) {
  const auto& edges = rg.g.edges;
  if (edge < 0 || edge >= static_cast<int>(edges.size()))
    throw Error("BadInput", "no such edge");
  const auto& e0 = edges[edge];
  if (e0.f_left < 0 || e0.f_right < 0)
    throw Error("BadInput", "boundary edge carries no rhombus");
  if (side < 0 || side > 3) throw Error("BadInput", "side must be 0..3");

  auto tie_of = [&](int ei, int s) -> std::pair<int, int> {  // (black, face)
    const auto& e = edges[ei];
    switch (s) {
      case 0: return {e.u, e.f_left};
      case 1: return {e.v, e.f_left};
      case 2: return {e.v, e.f_right};
      default: return {e.u, e.f_right};
    }
  };

  auto walk = [&](int start, std::pair<int, int> tie) {
    std::vector<int> out;
    int cur = start;
    auto [b, f] = tie;
    for (int guard = 0; guard < rg.g.n_edges(); ++guard) {
      // the other edge of face f at black vertex b
      const auto& cyc = rg.g.faces[f];
      int k = static_cast<int>(cyc.size());
      int next = -1;
      for (int i = 0; i < k; ++i) {
        if (cyc[i] != b) continue;
        int e1 = rg.g.find_edge(cyc[(i + k - 1) % k], b);
        int e2 = rg.g.find_edge(b, cyc[(i + 1) % k]);
        next = (e1 == cur) ? e2 : e1;
        break;
      }
      if (next < 0) throw Error("NumericFailure", "broken face cycle");
      const auto& e = edges[next];
      if (e.f_left < 0 || e.f_right < 0) break;  // window boundary
      out.push_back(next);
      b = (e.u == b) ? e.v : e.u;
      f = (e.f_left == f) ? e.f_right : e.f_left;
      cur = next;
      if (cur == edge) break;  // wrapped (cannot happen in a plane window)
    }
    return out;
  };

  std::vector<int> fwd = walk(edge, tie_of(edge, side));
  std::vector<int> bwd = walk(edge, tie_of(edge, (side + 2) % 4));
  std::vector<int> track;
  track.reserve(bwd.size() + fwd.size() + 1);
  for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) track.push_back(*it);
  track.push_back(edge);
  for (int t : fwd) track.push_back(t);
  return track;
}

std::vector<std::pair<double, int>> separating_angles(const RhombicGraph& rg,
                                                      int u, int v) {
  PathMoments pm = path_moments(rg, find_path(rg, u, v), 1);
  if (u != v) {
    double theta0 = std::arg(pm.p[0]);
    for (auto [angle, mult] : pm.theta)
      if (std::abs(wrap_angle(angle - theta0)) >= kPi - 1e-12)
        throw Error("WindowTooSmall",
                    "degenerate separating direction; enlarge the window");
  }
  return pm.theta;
}

}  // namespace isodg
