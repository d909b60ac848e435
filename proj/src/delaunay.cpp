#include "isodg/delaunay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace isodg {

namespace {

struct Tri {
  int a, b, c;
  cplx center;
  double r2;
  bool alive = true;
};

Tri make_tri(const std::vector<cplx>& pts, int a, int b, int c) {
  cplx za = pts[a], zb = pts[b], zc = pts[c];
  // orient counter-clockwise
  double cross = (zb.real() - za.real()) * (zc.imag() - za.imag()) -
                 (zb.imag() - za.imag()) * (zc.real() - za.real());
  if (cross < 0) std::swap(b, c);
  za = pts[a];
  zb = pts[b];
  zc = pts[c];
  cplx shift = (za + zb + zc) / 3.0;
  cplx w1 = za - shift, w2 = zb - shift, w3 = zc - shift;
  cplx num = std::norm(w1) * (w2 - w3) + std::norm(w2) * (w3 - w1) +
             std::norm(w3) * (w1 - w2);
  cplx den = conj(w1) * (w2 - w3) + conj(w2) * (w3 - w1) +
             conj(w3) * (w1 - w2);
  cplx center = num / den + shift;
  Tri t;
  t.a = a;
  t.b = b;
  t.c = c;
  t.center = center;
  t.r2 = std::norm(pts[a] - center);
  return t;
}

}  // namespace

PolyhedralGraph delaunay_from_points(const std::vector<cplx>& points) {
  std::size_t n = points.size();
  if (n < 3) throw Error("AllCollinear", "need at least three points");
  {
    std::vector<cplx> sorted = points;
    std::sort(sorted.begin(), sorted.end(), [](cplx a, cplx b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (std::abs(sorted[i] - sorted[i - 1]) < 1e-12)
        throw Error("DuplicatePoints", "coincident input points");
  }
  {
    cplx p0 = points[0];
    cplx dir{};
    double best = 0.0;
    for (const cplx& p : points) {
      if (std::abs(p - p0) > best) {
        best = std::abs(p - p0);
        dir = (p - p0) / std::abs(p - p0);
      }
    }
    double max_off = 0.0;
    for (const cplx& p : points)
      max_off = std::max(max_off,
                         std::abs(((p - p0) * conj(dir)).imag()));
    if (max_off <= 1e-12 * std::max(best, 1.0))
      throw Error("AllCollinear", "points span no area");
  }

  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const cplx& p : points) {
    lo_x = std::min(lo_x, p.real());
    hi_x = std::max(hi_x, p.real());
    lo_y = std::min(lo_y, p.imag());
    hi_y = std::max(hi_y, p.imag());
  }
  double diag = std::hypot(hi_x - lo_x, hi_y - lo_y);
  cplx mid{0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};
  double big = 64.0 * std::max(diag, 1.0);

  std::vector<cplx> pts = points;
  int s0 = static_cast<int>(pts.size());
  pts.push_back(mid + cplx{0.0, 2.0 * big});
  pts.push_back(mid + cplx{-1.7320508075688772 * big, -big});
  pts.push_back(mid + cplx{1.7320508075688772 * big, -big});

  std::vector<Tri> tris;
  tris.push_back(make_tri(pts, s0, s0 + 1, s0 + 2));

  std::vector<int> bad;
  std::map<std::pair<int, int>, int> edge_count;
  for (int p = 0; p < s0; ++p) {
    bad.clear();
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
      if (!tris[t].alive) continue;
      double d2 = std::norm(pts[p] - tris[t].center);
      // strictly inside the circumdisk; on-circle counts as outside
      if (d2 < tris[t].r2 - 1e-12 * std::max(tris[t].r2, 1.0))
        bad.push_back(t);
    }
    if (bad.empty()) {
      // tolerance knocked out the containing triangle; force it in
      for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
        if (!tris[t].alive) continue;
        const Tri& tr = tris[t];
        cplx za = pts[tr.a], zb = pts[tr.b], zc = pts[tr.c], q = pts[p];
        auto side = [](cplx a, cplx b, cplx c) {
          return (b.real() - a.real()) * (c.imag() - a.imag()) -
                 (b.imag() - a.imag()) * (c.real() - a.real());
        };
        if (side(za, zb, q) >= -1e-12 && side(zb, zc, q) >= -1e-12 &&
            side(zc, za, q) >= -1e-12) {
          bad.push_back(t);
          break;
        }
      }
      if (bad.empty())
        throw Error("NumericFailure", "no cavity found for inserted point");
    }
    edge_count.clear();
    for (int t : bad) {
      const Tri& tr = tris[t];
      std::array<std::pair<int, int>, 3> dir_edges{
          std::pair<int, int>{tr.a, tr.b}, {tr.b, tr.c}, {tr.c, tr.a}};
      for (auto [u, v] : dir_edges) {
        auto key = std::make_pair(std::min(u, v), std::max(u, v));
        auto it = edge_count.find(key);
        if (it == edge_count.end())
          edge_count.emplace(key, t * 4);
        else
          it->second = -1;
      }
      tris[t].alive = false;
    }
    for (const auto& [key, tag] : edge_count) {
      if (tag < 0) continue;  // interior to the cavity
      // recover the cavity boundary edge with its original orientation
      int t = tag / 4;
      const Tri& tr = tris[t];
      std::array<std::pair<int, int>, 3> dir_edges{
          std::pair<int, int>{tr.a, tr.b}, {tr.b, tr.c}, {tr.c, tr.a}};
      for (auto [u, v] : dir_edges) {
        if (std::min(u, v) == key.first && std::max(u, v) == key.second) {
          tris.push_back(make_tri(pts, u, v, p));
          break;
        }
      }
    }
  }

  std::vector<int> ids;
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < s0; ++i) ids.push_back(i);
  for (const Tri& t : tris) {
    if (!t.alive) continue;
    if (t.a >= s0 || t.b >= s0 || t.c >= s0) continue;
    faces.push_back({t.a, t.b, t.c});
  }
  if (faces.empty()) throw Error("AllCollinear", "points span no area");
  PolyhedralGraph g = make_graph(ids, points, faces, 0.0, false);
  return regularize(g);
}

namespace {

constexpr int kIdStride = 4096;
constexpr int kIdOffset = 2048;

int pack_id(int m, int n, int s) {
  if (std::abs(m) >= kIdOffset || std::abs(n) >= kIdOffset)
    throw Error("BadInput", "lattice window too large for id packing");
  return ((m + kIdOffset) * kIdStride + (n + kIdOffset)) * 4 + s;
}

PolyhedralGraph assemble_lattice(
    const std::string& kind,
    const std::vector<std::array<int, 3>>& vkeys,
    const std::vector<cplx>& coords,
    const std::vector<std::vector<std::array<int, 3>>>& face_keys,
    const std::function<bool(const std::array<int, 3>&)>& is_halo) {
  std::vector<int> ids(vkeys.size());
  for (std::size_t i = 0; i < vkeys.size(); ++i)
    ids[i] = pack_id(vkeys[i][0], vkeys[i][1], vkeys[i][2]);
  std::vector<std::vector<int>> faces;
  faces.reserve(face_keys.size());
  for (const auto& fk : face_keys) {
    std::vector<int> cyc(fk.size());
    for (std::size_t i = 0; i < fk.size(); ++i)
      cyc[i] = pack_id(fk[i][0], fk[i][1], fk[i][2]);
    faces.push_back(std::move(cyc));
  }
  PolyhedralGraph g = make_graph(ids, coords, faces, 1.0, false);
  g.kind = kind;
  g.lattice_coords = vkeys;
  g.halo.assign(vkeys.size(), 0);
  for (std::size_t i = 0; i < vkeys.size(); ++i)
    g.halo[i] = is_halo(vkeys[i]) ? 1 : 0;
  return g;
}

}  // namespace

PolyhedralGraph generate_lattice(const LatticeSpec& spec) {
  int W = spec.window;
  if (W < 1) throw Error("BadInput", "window must be at least 1");
  int H = W + 1;  // margin ring

  std::vector<std::array<int, 3>> vkeys;
  std::vector<cplx> coords;
  std::vector<std::vector<std::array<int, 3>>> faces;

  if (spec.kind == "square") {
    const double s = std::sqrt(2.0);
    for (int m = -H; m <= H; ++m)
      for (int n = -H; n <= H; ++n) {
        vkeys.push_back({m, n, 0});
        coords.push_back(s * cplx(m, n));
      }
    for (int m = -H; m < H; ++m)
      for (int n = -H; n < H; ++n)
        faces.push_back(
            {{{m, n, 0}, {m + 1, n, 0}, {m + 1, n + 1, 0}, {m, n + 1, 0}}});
    return assemble_lattice(spec.kind, vkeys, coords, faces,
                            [W](const std::array<int, 3>& k) {
                              return std::max(std::abs(k[0]),
                                              std::abs(k[1])) > W;
                            });
  }

  if (spec.kind == "triangular") {
    const double s = std::sqrt(3.0);
    const cplx w = std::polar(1.0, kPi / 3.0);
    for (int m = -H; m <= H; ++m)
      for (int n = -H; n <= H; ++n) {
        vkeys.push_back({m, n, 0});
        coords.push_back(s * (static_cast<double>(m) +
                              static_cast<double>(n) * w));
      }
    for (int m = -H; m < H; ++m)
      for (int n = -H; n < H; ++n) {
        faces.push_back({{{m, n, 0}, {m + 1, n, 0}, {m, n + 1, 0}}});
        faces.push_back({{{m + 1, n, 0}, {m + 1, n + 1, 0}, {m, n + 1, 0}}});
      }
    return assemble_lattice(spec.kind, vkeys, coords, faces,
                            [W](const std::array<int, 3>& k) {
                              return std::max(std::abs(k[0]),
                                              std::abs(k[1])) > W;
                            });
  }

  if (spec.kind == "quad_tiling") {
    if (spec.alpha.size() != 4)
      throw Error("InvalidAngles", "quad_tiling needs four angles");
    double a1 = spec.alpha[0], a2 = spec.alpha[1], a3 = spec.alpha[2],
           a4 = spec.alpha[3];
    if (!(0 <= a1 && a1 < a2 && a2 < a3 && a3 < a4 && a4 < kTwoPi))
      throw Error("InvalidAngles", "angles must be increasing in [0, 2pi)");
    if (!(a3 - a1 > kPi || a4 - a2 > kPi))
      throw Error("InvalidAngles",
                  "origin not interior to the fundamental quadrilateral");
    std::array<cplx, 4> zk;
    for (int k = 0; k < 4; ++k) zk[k] = std::polar(1.0, spec.alpha[k]);
    const cplx u = zk[0] - zk[2];  // translation lattice generators
    const cplx v = zk[1] - zk[3];

    // vertex (m, n, s): z = zk[s] + m u + n v, s in {0, 1}
    for (int m = -H; m <= H; ++m)
      for (int n = -H; n <= H; ++n)
        for (int s = 0; s < 2; ++s) {
          vkeys.push_back({m, n, s});
          coords.push_back(zk[s] + static_cast<double>(m) * u +
                           static_cast<double>(n) * v);
        }
    for (int m = -H; m <= H; ++m)
      for (int n = -H; n <= H; ++n) {
        if (m > -H && n > -H)  // base tile at m u + n v
          faces.push_back({{{m, n, 0},
                            {m, n, 1},
                            {m - 1, n, 0},
                            {m, n - 1, 1}}});
        if (m < H && n < H)  // rotated tile offset by zk[0] + zk[1]
          faces.push_back({{{m, n, 1},
                            {m, n, 0},
                            {m + 1, n, 1},
                            {m, n + 1, 0}}});
      }
    return assemble_lattice(spec.kind, vkeys, coords, faces,
                            [W](const std::array<int, 3>& k) {
                              return std::max(std::abs(k[0]),
                                              std::abs(k[1])) > W;
                            });
  }

  if (spec.kind == "custom_rhombic") {
    std::vector<double> beta = spec.beta, gamma = spec.gamma;
    if (beta.empty()) beta = {0.0};
    if (gamma.empty()) gamma = {kPi / 2.0};
    for (double b : beta)
      for (double c : gamma) {
        double d = wrap_angle(c - b);
        if (d <= 1e-9 || d >= kPi - 1e-9)
          throw Error("InvalidAngles",
                      "rhombus angles must lie strictly in (0, pi)");
      }
    int P = static_cast<int>(beta.size());
    int Q = static_cast<int>(gamma.size());
    int R = 2 * H;  // rhombic index range; black vertices have m + n even
    auto bstep = [&](int i) {
      return std::polar(1.0, beta[((i % P) + P) % P]);
    };
    auto gstep = [&](int j) {
      return std::polar(1.0, gamma[((j % Q) + Q) % Q]);
    };
    std::vector<cplx> B(2 * R + 1), G(2 * R + 1);
    B[R] = 0.0;
    G[R] = 0.0;
    for (int m = 1; m <= R; ++m) {
      B[R + m] = B[R + m - 1] + bstep(m - 1);
      B[R - m] = B[R - m + 1] - bstep(-m);
      G[R + m] = G[R + m - 1] + gstep(m - 1);
      G[R - m] = G[R - m + 1] - gstep(-m);
    }
    for (int m = -R; m <= R; ++m)
      for (int n = -R; n <= R; ++n) {
        if (((m + n) % 2 + 2) % 2 != 0) continue;
        vkeys.push_back({m, n, 0});
        coords.push_back(B[R + m] + G[R + n]);
      }
    for (int m = -R + 1; m < R; ++m)
      for (int n = -R + 1; n < R; ++n) {
        if (((m + n) % 2 + 2) % 2 != 1) continue;
        faces.push_back({{{m + 1, n, 0},
                          {m, n + 1, 0},
                          {m - 1, n, 0},
                          {m, n - 1, 0}}});
      }
    int core = 2 * W;
    return assemble_lattice(spec.kind, vkeys, coords, faces,
                            [core](const std::array<int, 3>& k) {
                              return std::max(std::abs(k[0]),
                                              std::abs(k[1])) > core;
                            });
  }

  throw Error("BadInput", "unknown lattice kind " + spec.kind);
}

PolyhedralGraph complete_to_triangulation(const PolyhedralGraph& g) {
  std::vector<std::vector<int>> faces;
  for (const auto& cyc : g.faces) {
    int k = static_cast<int>(cyc.size());
    if (k == 3) {
      faces.push_back(cyc);
      continue;
    }
    int r = 0;
    for (int i = 1; i < k; ++i)
      if (g.ext_id[cyc[i]] < g.ext_id[cyc[r]]) r = i;
    for (int i = 1; i + 1 < k; ++i)
      faces.push_back(
          {cyc[r], cyc[(r + i) % k], cyc[(r + i + 1) % k]});
  }
  PolyhedralGraph out;
  out.z = g.z;
  out.ext_id = g.ext_id;
  out.index_of_id = g.index_of_id;
  out.faces = std::move(faces);
  out.isoradius = g.isoradius;
  out.kind = g.kind;
  out.lattice_coords = g.lattice_coords;
  out.halo = g.halo;
  finalize_graph(out, false);
  return out;
}

}  // namespace isodg
