#include "isodg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isodg {

namespace {

double shoelace_area(const std::vector<cplx>& pts) {
  double a = 0.0;
  std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx& p = pts[i];
    const cplx& q = pts[(i + 1) % n];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

// Circumcenter of three points, coordinates pre-shifted by the caller.
cplx tri_center(cplx z1, cplx z2, cplx z3) {
  cplx num = std::norm(z1) * (z2 - z3) + std::norm(z2) * (z3 - z1) +
             std::norm(z3) * (z1 - z2);
  cplx den =
      conj(z1) * (z2 - z3) + conj(z2) * (z3 - z1) + conj(z3) * (z1 - z2);
  // den = -4i * area of (z1, z2, z3)
  return num / den;
}

}  // namespace

CircumData circumdata(const std::vector<cplx>& pts) {
  std::size_t n = pts.size();
  if (n < 3) throw Error("CollinearFace", "face needs >= 3 vertices");
  cplx mean = pairwise_sum(pts) / static_cast<double>(n);
  std::vector<cplx> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = pts[i] - mean;

  // best-conditioned defining triple: the two farthest-apart vertices plus
  // the one maximizing the triangle area
  std::size_t i0 = 0, i1 = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = std::norm(w[i] - w[j]);
      if (d > best) {
        best = d;
        i0 = i;
        i1 = j;
      }
    }
  std::size_t i2 = n;
  best = -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i0 || k == i1) continue;
    double a = std::abs(shoelace_area({w[i0], w[i1], w[k]}));
    if (a > best) {
      best = a;
      i2 = k;
    }
  }
  double scale = std::abs(w[i0] - w[i1]);
  if (best <= tol_geom * scale * scale)
    throw Error("CollinearFace", "vertices are collinear");

  cplx c = tri_center(w[i0], w[i1], w[i2]);
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) r += std::abs(w[i] - c);
  r /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dev = std::abs(std::abs(w[i] - c) - r);
    if (dev > tol_geom)
      throw Error("NonCocyclic", "vertex off the circumcircle by " +
                                     std::to_string(dev));
  }
  double area = shoelace_area(pts);
  return CircumData{c + mean, r, area};
}

void finalize_graph(PolyhedralGraph& g, bool check_crossings) {
  int nv = g.n_vertices();
  int nf = g.n_faces();
  g.fgeo.assign(nf, {});
  g.edges.clear();
  g.edge_of.clear();
  g.vfaces.assign(nv, {});
  g.vedges.assign(nv, {});
  g.vneigh.assign(nv, {});
  g.interior.assign(nv, 0);

  for (int f = 0; f < nf; ++f) {
    const auto& cyc = g.faces[f];
    std::vector<cplx> pts(cyc.size());
    for (std::size_t i = 0; i < cyc.size(); ++i) pts[i] = g.z[cyc[i]];
    CircumData cd = circumdata(pts);
    if (cd.area <= 0.0)
      throw Error("FaceOrientation", "face " + std::to_string(f) +
                                         " is not counter-clockwise");
    FaceGeometry fg;
    fg.center = cd.center;
    fg.radius = cd.radius;
    fg.area = cd.area;
    cplx c1{}, c2{};
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      cplx dz = pts[(i + 1) % cyc.size()] - pts[i];
      cplx ratio = conj(dz) / dz;
      c1 += ratio;
      c2 += ratio * ratio;
    }
    fg.C1 = c1;
    fg.C2 = c2;
    g.fgeo[f] = fg;

    // cyclic order around the center (convexity of the cyclic polygon):
    // the ccw arcs between consecutive vertices must make one full turn
    double prev = std::arg(pts[0] - cd.center);
    double total = 0.0;
    for (std::size_t i = 1; i <= cyc.size(); ++i) {
      double a = std::arg(pts[i % cyc.size()] - cd.center);
      double step = wrap_angle(a - prev);
      if (step <= 0) step += kTwoPi;
      total += step;
      prev = a;
    }
    if (std::abs(total - kTwoPi) > 1e-6)
      throw Error("NonCocyclic",
                  "face " + std::to_string(f) + " not in ccw cyclic order");
  }

  for (int f = 0; f < nf; ++f) {
    const auto& cyc = g.faces[f];
    int k = static_cast<int>(cyc.size());
    for (int i = 0; i < k; ++i) {
      int a = cyc[i], b = cyc[(i + 1) % k];
      if (a == b) throw Error("DegenerateFace", "repeated vertex in face");
      long long key = PolyhedralGraph::edge_key(a, b);
      auto it = g.edge_of.find(key);
      int ei;
      if (it == g.edge_of.end()) {
        ei = g.n_edges();
        g.edge_of.emplace(key, ei);
        PolyhedralGraph::Edge e;
        e.u = std::min(a, b);
        e.v = std::max(a, b);
        e.f_left = -1;
        e.f_right = -1;
        g.edges.push_back(e);
      } else {
        ei = it->second;
      }
      PolyhedralGraph::Edge& e = g.edges[ei];
      int& slot = (a == e.u) ? e.f_left : e.f_right;
      if (slot != -1)
        throw Error("NonManifold", "directed edge used by two faces");
      slot = f;
    }
    for (int i = 0; i < k; ++i) g.vfaces[cyc[i]].push_back(f);
  }
  for (int ei = 0; ei < g.n_edges(); ++ei) {
    const auto& e = g.edges[ei];
    g.vedges[e.u].push_back(ei);
    g.vedges[e.v].push_back(ei);
    g.vneigh[e.u].push_back(e.v);
    g.vneigh[e.v].push_back(e.u);
  }
  for (int v = 0; v < nv; ++v) {
    bool inter = !g.vedges[v].empty();
    for (int ei : g.vedges[v]) {
      const auto& e = g.edges[ei];
      if (e.f_left < 0 || e.f_right < 0) {
        inter = false;
        break;
      }
    }
    g.interior[v] = inter ? 1 : 0;
  }

  if (check_crossings && g.n_edges() > 1) {
    // uniform grid over edge bounding boxes
    double max_len = 0.0;
    double min_x = 1e300, min_y = 1e300;
    for (const auto& e : g.edges) {
      max_len = std::max(max_len, std::abs(g.z[e.u] - g.z[e.v]));
      min_x = std::min({min_x, g.z[e.u].real(), g.z[e.v].real()});
      min_y = std::min({min_y, g.z[e.u].imag(), g.z[e.v].imag()});
    }
    double cell = std::max(max_len, 1e-12);
    auto cell_of = [&](double x, double y) {
      return std::pair<long long, long long>(
          static_cast<long long>(std::floor((x - min_x) / cell)),
          static_cast<long long>(std::floor((y - min_y) / cell)));
    };
    std::unordered_map<long long, std::vector<int>> grid;
    auto grid_key = [](long long cx, long long cy) {
      return cx * 2000003LL + cy;
    };
    for (int ei = 0; ei < g.n_edges(); ++ei) {
      const auto& e = g.edges[ei];
      auto [ax, ay] = cell_of(g.z[e.u].real(), g.z[e.u].imag());
      auto [bx, by] = cell_of(g.z[e.v].real(), g.z[e.v].imag());
      for (long long cx = std::min(ax, bx); cx <= std::max(ax, bx); ++cx)
        for (long long cy = std::min(ay, by); cy <= std::max(ay, by); ++cy)
          grid[grid_key(cx, cy)].push_back(ei);
    }
    auto orient = [](cplx a, cplx b, cplx c) {
      return (b.real() - a.real()) * (c.imag() - a.imag()) -
             (b.imag() - a.imag()) * (c.real() - a.real());
    };
    auto crosses = [&](int i, int j) {
      const auto& e1 = g.edges[i];
      const auto& e2 = g.edges[j];
      if (e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v)
        return false;
      cplx a = g.z[e1.u], b = g.z[e1.v], c = g.z[e2.u], d = g.z[e2.v];
      double o1 = orient(a, b, c), o2 = orient(a, b, d);
      double o3 = orient(c, d, a), o4 = orient(c, d, b);
      return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) &&
             std::min(std::abs(o1), std::abs(o2)) > 1e-14 &&
             std::min(std::abs(o3), std::abs(o4)) > 1e-14;
    };
    for (auto& [key, list] : grid) {
      (void)key;
      for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = i + 1; j < list.size(); ++j)
          if (crosses(list[i], list[j]))
            throw Error("EdgeCrossing",
                        "edges " + std::to_string(list[i]) + " and " +
                            std::to_string(list[j]) + " intersect");
    }
  }
}

PolyhedralGraph make_graph(const std::vector<int>& ids,
                           const std::vector<cplx>& coords,
                           const std::vector<std::vector<int>>& face_id_cycles,
                           double isoradius, bool check_crossings) {
  if (ids.size() != coords.size())
    throw Error("BadInput", "ids/coords size mismatch");
  PolyhedralGraph g;
  g.z = coords;
  g.ext_id = ids;
  g.isoradius = isoradius;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!g.index_of_id.emplace(ids[i], static_cast<int>(i)).second)
      throw Error("DuplicatePoints", "duplicate vertex id");
  }
  {
    std::vector<cplx> sorted = coords;
    std::sort(sorted.begin(), sorted.end(), [](cplx a, cplx b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (std::abs(sorted[i] - sorted[i - 1]) < 1e-12)
        throw Error("DuplicatePoints", "coincident vertex coordinates");
  }
  g.faces.reserve(face_id_cycles.size());
  for (const auto& cyc : face_id_cycles) {
    std::vector<int> internal(cyc.size());
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      auto it = g.index_of_id.find(cyc[i]);
      if (it == g.index_of_id.end())
        throw Error("BadInput", "face references unknown vertex id");
      internal[i] = it->second;
    }
    g.faces.push_back(std::move(internal));
  }
  finalize_graph(g, check_crossings);
  return g;
}

EdgeGeometry edge_angles(const PolyhedralGraph& g, int u, int v) {
  int ei = g.find_edge(u, v);
  if (ei < 0) throw Error("BadInput", "no such edge");
  const auto& e = g.edges[ei];
  EdgeGeometry eg;
  if (u == e.u) {
    eg.f_n = e.f_left;
    eg.f_s = e.f_right;
  } else {
    eg.f_n = e.f_right;
    eg.f_s = e.f_left;
  }
  if (eg.f_n < 0 || eg.f_s < 0)
    throw Error("BoundaryEdge", "edge has a missing side face");
  const cplx zu = g.z[u], zv = g.z[v];
  const cplx cn = g.fgeo[eg.f_n].center, cs = g.fgeo[eg.f_s].center;
  eg.theta_n = 0.5 * wrap_angle(std::arg(cn - zu) - std::arg(zv - cn));
  eg.theta_s = 0.5 * wrap_angle(std::arg(cs - zv) - std::arg(zu - cs));
  eg.theta = 0.5 * (eg.theta_n + eg.theta_s);
  eg.R_n = g.fgeo[eg.f_n].radius;
  eg.R_s = g.fgeo[eg.f_s].radius;
  eg.is_chord = std::abs(cn - cs) <= tol_geom;
  return eg;
}

double theta_n_from_vertex(const PolyhedralGraph& g, int u, int v, int w) {
  cplx z1 = g.z[u], z2 = g.z[v], z3 = g.z[w];
  cplx ratio =
      -(conj(z2 - z3) * (z1 - z3)) / ((z2 - z3) * conj(z1 - z3));
  return 0.5 * std::arg(ratio);
}

double face_curvature(const PolyhedralGraph& g, int face) {
  const auto& cyc = g.faces[face];
  int k = static_cast<int>(cyc.size());
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    int a = cyc[i], b = cyc[(i + 1) % k];
    int ei = g.find_edge(a, b);
    const auto& e = g.edges[ei];
    if (e.f_left < 0 || e.f_right < 0)
      throw Error("BoundaryFace", "face touches the window boundary");
    EdgeGeometry eg = edge_angles(g, a, b);
    sum += kPi - 2.0 * eg.theta;
  }
  return 4.0 * kPi - 2.0 * sum;
}

PolyhedralGraph regularize(const PolyhedralGraph& g) {
  int nf = g.n_faces();
  std::vector<int> parent(nf);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> chord_edge(g.n_edges(), 0);
  for (int ei = 0; ei < g.n_edges(); ++ei) {
    const auto& e = g.edges[ei];
    if (e.f_left < 0 || e.f_right < 0) continue;
    if (std::abs(g.fgeo[e.f_left].center - g.fgeo[e.f_right].center) <=
        tol_geom) {
      chord_edge[ei] = 1;
      parent[find(e.f_left)] = find(e.f_right);
    }
  }

  // boundary walk per merged component: successor map over non-chord
  // directed edges
  std::vector<std::vector<int>> out;  // per component: flattened (a, b) pairs
  std::unordered_map<int, int> comp_index;
  std::vector<std::unordered_map<int, int>> next_of;  // a -> b per component
  for (int f = 0; f < nf; ++f) {
    int root = find(f);
    auto [it, inserted] = comp_index.emplace(root, next_of.size());
    if (inserted) next_of.emplace_back();
    auto& succ = next_of[it->second];
    const auto& cyc = g.faces[f];
    int k = static_cast<int>(cyc.size());
    for (int i = 0; i < k; ++i) {
      int a = cyc[i], b = cyc[(i + 1) % k];
      int ei = g.find_edge(a, b);
      if (!chord_edge[ei]) succ[a] = b;
    }
  }

  std::vector<std::vector<int>> new_faces;
  std::vector<char> emitted(next_of.size(), 0);
  for (int f = 0; f < nf; ++f) {
    int ci = comp_index[find(f)];
    if (emitted[ci]) continue;
    emitted[ci] = 1;
    const auto& succ = next_of[ci];
    int start = succ.begin()->first;
    std::vector<int> cyc;
    int cur = start;
    do {
      cyc.push_back(cur);
      auto it = succ.find(cur);
      if (it == succ.end())
        throw Error("BadInput", "chord merge produced an open boundary");
      cur = it->second;
      if (cyc.size() > succ.size())
        throw Error("BadInput", "chord merge produced a non-simple boundary");
    } while (cur != start);
    if (cyc.size() != succ.size())
      throw Error("BadInput", "chord component has a disconnected boundary");
    new_faces.push_back(std::move(cyc));
  }

  PolyhedralGraph out_g;
  out_g.z = g.z;
  out_g.ext_id = g.ext_id;
  out_g.index_of_id = g.index_of_id;
  out_g.faces = std::move(new_faces);
  out_g.isoradius = g.isoradius;
  out_g.kind = g.kind;
  out_g.lattice_coords = g.lattice_coords;
  out_g.halo = g.halo;
  finalize_graph(out_g, false);
  return out_g;
}

ValidationReport validate(const PolyhedralGraph& g, const std::string& mode) {
  ValidationReport rep;
  rep.mode = mode;
  if (mode != "delaunay" && mode != "weak_delaunay" && mode != "isoradial")
    throw Error("BadInput", "unknown validation mode " + mode);

  if (mode == "isoradial") {
    double r0 = g.isoradius;
    if (r0 <= 0.0) {
      std::vector<double> radii;
      for (const auto& fg : g.fgeo) radii.push_back(fg.radius);
      std::nth_element(radii.begin(), radii.begin() + radii.size() / 2,
                       radii.end());
      r0 = radii.empty() ? 0.0 : radii[radii.size() / 2];
    }
    for (int f = 0; f < g.n_faces(); ++f) {
      double dev = std::abs(g.fgeo[f].radius - r0);
      if (dev > tol_geom)
        rep.issues.push_back({"isoradius", f, -1, -1, dev});
    }
    rep.ok = rep.issues.empty();
    return rep;
  }

  // empty-circumdisk test with a vertex grid
  double max_r = 0.0;
  for (const auto& fg : g.fgeo) max_r = std::max(max_r, fg.radius);
  double cell = std::max(max_r, 1e-12);
  double min_x = 1e300, min_y = 1e300;
  for (const cplx& p : g.z) {
    min_x = std::min(min_x, p.real());
    min_y = std::min(min_y, p.imag());
  }
  auto grid_key = [](long long cx, long long cy) {
    return cx * 2000003LL + cy;
  };
  std::unordered_map<long long, std::vector<int>> grid;
  for (int v = 0; v < g.n_vertices(); ++v) {
    long long cx = static_cast<long long>((g.z[v].real() - min_x) / cell);
    long long cy = static_cast<long long>((g.z[v].imag() - min_y) / cell);
    grid[grid_key(cx, cy)].push_back(v);
  }
  for (int f = 0; f < g.n_faces(); ++f) {
    const auto& fg = g.fgeo[f];
    const auto& cyc = g.faces[f];
    long long cx0 = static_cast<long long>(
        std::floor((fg.center.real() - fg.radius - min_x) / cell));
    long long cx1 = static_cast<long long>(
        std::floor((fg.center.real() + fg.radius - min_x) / cell));
    long long cy0 = static_cast<long long>(
        std::floor((fg.center.imag() - fg.radius - min_y) / cell));
    long long cy1 = static_cast<long long>(
        std::floor((fg.center.imag() + fg.radius - min_y) / cell));
    for (long long cx = cx0; cx <= cx1; ++cx)
      for (long long cy = cy0; cy <= cy1; ++cy) {
        auto it = grid.find(grid_key(cx, cy));
        if (it == grid.end()) continue;
        for (int v : it->second) {
          double d = std::abs(g.z[v] - fg.center);
          if (d < fg.radius - tol_geom) {
            if (std::find(cyc.begin(), cyc.end(), v) == cyc.end())
              rep.issues.push_back(
                  {"circumdisk", f, v, -1, fg.radius - d});
          } else if (mode == "delaunay" &&
                     std::abs(d - fg.radius) <= tol_geom &&
                     std::find(cyc.begin(), cyc.end(), v) == cyc.end()) {
            rep.issues.push_back({"cocyclic_extra", f, v, -1, 0.0});
          }
        }
      }
  }
  if (mode == "delaunay") {
    for (int ei = 0; ei < g.n_edges(); ++ei) {
      const auto& e = g.edges[ei];
      if (e.f_left < 0 || e.f_right < 0) continue;
      if (std::abs(g.fgeo[e.f_left].center - g.fgeo[e.f_right].center) <=
          tol_geom)
        rep.issues.push_back({"chord", -1, -1, ei, 0.0});
    }
  }
  rep.ok = rep.issues.empty();
  return rep;
}

}  // namespace isodg
