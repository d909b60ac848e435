#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

#include "doctest.h"
#include "isodg/delaunay.hpp"
#include "isodg/rhombic.hpp"

using namespace isodg;

namespace {

PolyhedralGraph lattice(const std::string& kind, int window) {
  LatticeSpec spec;
  spec.kind = kind;
  spec.window = window;
  return generate_lattice(spec);
}

int find_vertex(const PolyhedralGraph& g, int m, int n, int s = 0) {
  for (int i = 0; i < g.n_vertices(); ++i) {
    const auto& k = g.lattice_coords[i];
    if (k[0] == m && k[1] == n && k[2] == s) return i;
  }
  REQUIRE(false);
  return -1;
}

// rhombus center = midpoint of the black diagonal
cplx rh_center(const RhombicGraph& rg, int edge) {
  const auto& e = rg.g.edges[edge];
  return (rg.g.z[e.u] + rg.g.z[e.v]) / 2.0;
}

// tie segment vector for the numbered side of an edge's rhombus
cplx tie_vector(const RhombicGraph& rg, int edge, int side) {
  const auto& e = rg.g.edges[edge];
  int b = (side == 0 || side == 3) ? e.u : e.v;
  int f = (side <= 1) ? e.f_left : e.f_right;
  return rg.pos(b) - rg.pos(rg.nb + f);
}

void check_endpoint_pair(const RhombicGraph& rg, int u, int v) {
  auto path = find_path(rg, u, v);
  auto pm = path_moments(rg, path, 9);
  REQUIRE(pm.p.size() == 5);
  CHECK(std::abs(pm.p[0] - (rg.pos(v) - rg.pos(u))) < 1e-9);

  std::vector<int> rev(path.rbegin(), path.rend());
  auto pr = path_moments(rg, rev, 9);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(pr.p[k] + pm.p[k]) < 1e-9);

  for (int k = 1; k < 5; ++k)
    CHECK(std::abs(pm.p[k]) <= (2 * k + 1) * std::abs(pm.p[0]) + 1e-9);

  auto th = separating_angles(rg, u, v);
  REQUIRE(!th.empty());
  double t0 = std::arg(pm.p[0]);
  CHECK(th.back().first - th.front().first < kPi);
  CHECK(th.front().first <= t0 + 1e-12);
  CHECK(t0 <= th.back().first + 1e-12);
  for (const auto& [ang, mult] : th) CHECK(mult > 0);
  for (int k = 0; k < 5; ++k) {
    cplx s{};
    for (const auto& [ang, mult] : th)
      s += static_cast<double>(mult) * std::polar(1.0, (2 * k + 1) * ang);
    CHECK(std::abs(s - pm.p[k]) < 1e-9);
  }
}

}  // namespace

TEST_CASE("kite graphs of the reference lattices have unit rhombi") {
  for (const auto& [kind, corner] :
       std::vector<std::pair<std::string, double>>{{"square", kPi / 2},
                                                   {"triangular", kPi / 3}}) {
    auto g = lattice(kind, 3);
    auto rg = build_rhombic(g);
    CHECK(rg.nb == g.n_vertices());
    CHECK(rg.n_vertices() == rg.nb + g.n_faces());
    int checked = 0;
    for (int ei = 0; ei < g.n_edges(); ++ei) {
      const auto& e = g.edges[ei];
      if (e.f_left < 0 || e.f_right < 0) continue;
      cplx zu = rg.pos(e.u), zv = rg.pos(e.v);
      cplx wl = rg.pos(rg.nb + e.f_left), wr = rg.pos(rg.nb + e.f_right);
      for (cplx side : {zu - wl, zv - wl, zv - wr, zu - wr})
        CHECK(std::abs(std::abs(side) - 1.0) < 1e-12);
      double black_angle = std::abs(wrap_angle(std::arg(wl - zu) -
                                               std::arg(wr - zu)));
      CHECK(black_angle == doctest::Approx(corner).epsilon(1e-12));
      auto eg = edge_angles(g, e.u, e.v);
      CHECK(black_angle == doctest::Approx(2 * eg.theta).epsilon(1e-12));
      ++checked;
    }
    CHECK(checked > 20);
  }
}

TEST_CASE("kite construction rescales to unit circumradius") {
  std::vector<int> ids;
  std::vector<cplx> pts;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      ids.push_back(j * 3 + i);
      pts.push_back(cplx(i, j));
    }
  std::vector<std::vector<int>> faces;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i)
      faces.push_back({j * 3 + i, j * 3 + i + 1, (j + 1) * 3 + i + 1,
                       (j + 1) * 3 + i});
  auto g = make_graph(ids, pts, faces);
  auto rg = build_rhombic(g);
  CHECK(rg.g.isoradius == doctest::Approx(1.0));
  CHECK(std::abs(rg.g.z[1] - rg.g.z[0]) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  for (int f = 0; f < rg.g.n_faces(); ++f) {
    CHECK(rg.g.fgeo[f].radius == doctest::Approx(1.0).epsilon(1e-12));
    for (int b : rg.g.faces[f])
      CHECK(std::abs(rg.pos(b) - rg.pos(rg.nb + f)) ==
            doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(g.z[1] == cplx(1, 0));  // input untouched
}

TEST_CASE("kite construction rejects non-isoradial and chorded input") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> jit(-0.2, 0.2);
  std::vector<cplx> pts;
  for (int j = 0; j < 7; ++j)
    for (int i = 0; i < 7; ++i)
      pts.push_back(cplx(i + jit(rng), j + jit(rng)));
  auto tri = delaunay_from_points(pts);
  CHECK_THROWS_AS(build_rhombic(tri), Error);
  try {
    build_rhombic(tri);
  } catch (const Error& e) {
    CHECK(e.code == "NotIsoradial");
  }

  auto split = make_graph({0, 1, 2, 3},
                          {cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)},
                          {{0, 1, 2}, {0, 2, 3}});
  try {
    build_rhombic(split);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == "BadInput");
  }
}

TEST_CASE("kite paths: trivial, adjacent, and long") {
  auto g = lattice("square", 6);
  auto rg = build_rhombic(g);
  int u = find_vertex(g, 0, 0);
  CHECK(find_path(rg, u, u).empty());
  auto pm0 = path_moments(rg, find_path(rg, u, u), 5);
  for (const auto& p : pm0.p) CHECK(std::abs(p) == 0.0);
  CHECK(pm0.theta.empty());

  int v = find_vertex(g, 1, 0);
  auto two = find_path(rg, u, v);
  REQUIRE(two.size() == 3);
  CHECK(rg.is_black(two[0]));
  CHECK(!rg.is_black(two[1]));
  CHECK(rg.is_black(two[2]));
  CHECK(two.front() == u);
  CHECK(two.back() == v);

  int far = find_vertex(g, 5, 0);
  int near = find_vertex(g, -5, 0);
  CHECK(find_path(rg, near, far).size() == 21);  // 20 unit steps

  // two congruent but disjoint triangles: no kite path across
  const double s = std::sqrt(3.0);
  auto twins = make_graph(
      {0, 1, 2, 3, 4, 5},
      {cplx(0, 0), cplx(s, 0), cplx(s / 2, 1.5), cplx(100, 0), cplx(100 + s, 0),
       cplx(100 + s / 2, 1.5)},
      {{0, 1, 2}, {3, 4, 5}});
  auto rt = build_rhombic(twins);
  try {
    find_path(rt, 0, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == "Disconnected");
  }
}

TEST_CASE("moments of the adjacent-pair path") {
  auto g = lattice("square", 2);
  auto rg = build_rhombic(g);
  int u = find_vertex(g, 0, 0), v = find_vertex(g, 1, 0);
  auto pm = path_moments(rg, find_path(rg, u, v), 3);
  REQUIRE(pm.p.size() == 2);
  REQUIRE(pm.steps.size() == 2);
  CHECK(std::abs(pm.p[0] - cplx(std::sqrt(2.0), 0)) < 1e-13);
  CHECK(std::abs(pm.p[1] - cplx(-std::sqrt(2.0), 0)) < 1e-13);
  CHECK(pm.u == u);
  CHECK(pm.v == v);
  CHECK(pm.p_n(3) == pm.p[1]);

  auto th = separating_angles(rg, u, v);
  REQUIRE(th.size() == 2);
  CHECK(th[0].first == doctest::Approx(-kPi / 4).epsilon(1e-12));
  CHECK(th[1].first == doctest::Approx(kPi / 4).epsilon(1e-12));
  CHECK(th[0].second == 1);
  CHECK(th[1].second == 1);
}

TEST_CASE("moments agree across distinct paths between the same endpoints") {
  auto g = lattice("square", 5);
  auto rg = build_rhombic(g);
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> pick(0, g.n_vertices() - 1);
  int done = 0;
  while (done < 8) {
    int u = pick(rng), v = pick(rng);
    if (u == v) continue;
    auto direct = find_path(rg, u, v);
    std::unordered_set<int> on(direct.begin(), direct.end());
    int w = pick(rng);
    if (w == u || w == v || on.count(w)) continue;
    auto detour = find_path(rg, u, w);
    auto tail = find_path(rg, w, v);
    detour.insert(detour.end(), tail.begin() + 1, tail.end());
    REQUIRE(detour != direct);
    auto a = path_moments(rg, direct, 9);
    auto b = path_moments(rg, detour, 9);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(a.p[k] - b.p[k]) < 1e-12);
    REQUIRE(a.theta.size() == b.theta.size());
    for (std::size_t i = 0; i < a.theta.size(); ++i) {
      CHECK(a.theta[i].first ==
            doctest::Approx(b.theta[i].first).epsilon(1e-9));
      CHECK(a.theta[i].second == b.theta[i].second);
    }
    ++done;
  }
}

TEST_CASE("separating angles of axis-aligned and diagonal square pairs") {
  auto g = lattice("square", 4);
  auto rg = build_rhombic(g);
  auto th = separating_angles(rg, find_vertex(g, -3, 0), find_vertex(g, 3, 0));
  REQUIRE(th.size() == 2);
  CHECK(th[0].first == doctest::Approx(-kPi / 4).epsilon(1e-12));
  CHECK(th[1].first == doctest::Approx(kPi / 4).epsilon(1e-12));
  CHECK(th[0].second == 6);
  CHECK(th[1].second == 6);

  auto diag = separating_angles(rg, find_vertex(g, 0, 0), find_vertex(g, 2, 2));
  REQUIRE(diag.size() == 1);
  CHECK(diag[0].first == doctest::Approx(kPi / 4).epsilon(1e-12));
  CHECK(diag[0].second == 4);

  CHECK(separating_angles(rg, find_vertex(g, 1, 1), find_vertex(g, 1, 1))
            .empty());
}

TEST_CASE("angle sets reconstruct every odd moment") {
  std::mt19937 rng(4242);
  auto run = [&](const PolyhedralGraph& g) {
    auto rg = build_rhombic(g);
    std::uniform_int_distribution<int> pick(0, g.n_vertices() - 1);
    for (int it = 0; it < 10; ++it) {
      int u = pick(rng), v = pick(rng);
      if (u == v) {
        --it;
        continue;
      }
      check_endpoint_pair(rg, u, v);
    }
  };
  run(lattice("square", 5));
  run(lattice("triangular", 4));
  LatticeSpec q;
  q.kind = "quad_tiling";
  q.window = 3;
  q.alpha = {kPi / 3, 5 * kPi / 7, 13 * kPi / 9, 21 * kPi / 11};
  run(generate_lattice(q));
  LatticeSpec c;
  c.kind = "custom_rhombic";
  c.window = 3;
  c.beta = {0.0, 0.35};
  c.gamma = {kPi / 2, 1.9, 2.3};
  run(generate_lattice(c));
}

TEST_CASE("quasiperiodic lattice reproduces its construction angles") {
  LatticeSpec c;
  c.kind = "custom_rhombic";
  c.window = 4;
  c.beta = {0.0, 0.35};
  c.gamma = {kPi / 2, 1.9, 2.3};
  auto g = generate_lattice(c);
  auto rg = build_rhombic(g);
  // from (0,0) to (4,2): column steps beta[0], beta[1] twice over, row steps
  // gamma[0], gamma[1] once each
  auto th = separating_angles(rg, find_vertex(g, 0, 0), find_vertex(g, 4, 2));
  REQUIRE(th.size() == 4);
  CHECK(th[0].first == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(th[0].second == 2);
  CHECK(th[1].first == doctest::Approx(0.35).epsilon(1e-9));
  CHECK(th[1].second == 2);
  CHECK(th[2].first == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(th[2].second == 1);
  CHECK(th[3].first == doctest::Approx(1.9).epsilon(1e-9));
  CHECK(th[3].second == 1);
}

TEST_CASE("nearly parallel step directions merge into one angle class") {
  LatticeSpec c;
  c.kind = "custom_rhombic";
  c.window = 3;
  c.beta = {0.0};
  c.gamma = {kPi / 2 - 2e-10, kPi / 2 + 2e-10};
  auto g = generate_lattice(c);
  auto rg = build_rhombic(g);
  int u = find_vertex(g, 0, 0), v = find_vertex(g, 0, 4);
  auto th = separating_angles(rg, u, v);
  REQUIRE(th.size() == 1);
  CHECK(th[0].second == 4);
  CHECK(std::abs(th[0].first - kPi / 2) < 1e-8);
  auto pm = path_moments(rg, find_path(rg, u, v), 1);
  cplx s = 4.0 * std::polar(1.0, th[0].first);
  CHECK(std::abs(s - pm.p[0]) < 1e-8);
}

TEST_CASE("quad tiling edge classes carry four rhombus shapes") {
  LatticeSpec q;
  q.kind = "quad_tiling";
  q.window = 3;
  q.alpha = {kPi / 3, 5 * kPi / 7, 13 * kPi / 9, 21 * kPi / 11};
  auto g = generate_lattice(q);
  auto rg = build_rhombic(g);
  std::array<double, 4> central = {
      q.alpha[1] - q.alpha[0], q.alpha[2] - q.alpha[1],
      q.alpha[3] - q.alpha[2], kTwoPi - (q.alpha[3] - q.alpha[0])};
  std::array<int, 4> seen = {0, 0, 0, 0};
  for (int ei = 0; ei < g.n_edges(); ++ei) {
    const auto& e = g.edges[ei];
    if (e.f_left < 0 || e.f_right < 0) continue;
    auto eg = edge_angles(g, e.u, e.v);
    CHECK(std::abs(eg.theta_n - eg.theta_s) < 1e-12);
    bool matched = false;
    for (int k = 0; k < 4; ++k)
      if (std::abs(eg.theta - (kPi - central[k]) / 2) < 1e-9) {
        ++seen[k];
        matched = true;
        break;
      }
    CHECK(matched);
    cplx zu = rg.pos(e.u);
    cplx wl = rg.pos(rg.nb + e.f_left), wr = rg.pos(rg.nb + e.f_right);
    double black_angle =
        std::abs(wrap_angle(std::arg(wl - zu) - std::arg(wr - zu)));
    CHECK(black_angle == doctest::Approx(2 * eg.theta).epsilon(1e-9));
  }
  for (int k = 0; k < 4; ++k) CHECK(seen[k] > 4);
}

TEST_CASE("train tracks run straight through the square lattice") {
  auto g = lattice("square", 5);
  auto rg = build_rhombic(g);
  int e = g.find_edge(find_vertex(g, 0, 0), find_vertex(g, 1, 0));
  REQUIRE(e >= 0);
  auto t0 = train_track(rg, e, 0);
  CHECK(t0.size() >= 8);
  CHECK(std::count(t0.begin(), t0.end(), e) == 1);
  CHECK(std::set<int>(t0.begin(), t0.end()).size() == t0.size());
  cplx d{};
  for (std::size_t k = 1; k < t0.size(); ++k) {
    cplx diff = rh_center(rg, t0[k]) - rh_center(rg, t0[k - 1]);
    if (k == 1)
      d = diff;
    else
      CHECK(std::abs(diff - d) < 1e-9);
  }

  auto t2 = train_track(rg, e, 2);
  std::reverse(t2.begin(), t2.end());
  CHECK(t2 == t0);

  auto t1 = train_track(rg, e, 1);
  std::set<int> s0(t0.begin(), t0.end()), s1(t1.begin(), t1.end());
  std::vector<int> common;
  std::set_intersection(s0.begin(), s0.end(), s1.begin(), s1.end(),
                        std::back_inserter(common));
  REQUIRE(common.size() == 1);
  CHECK(common[0] == e);

  int be = -1;
  for (int ei = 0; ei < g.n_edges(); ++ei)
    if (g.edges[ei].f_left < 0 || g.edges[ei].f_right < 0) be = ei;
  REQUIRE(be >= 0);
  CHECK_THROWS_AS(train_track(rg, be, 0), Error);
}

TEST_CASE("train tracks advance monotonically and meet at most once") {
  auto run = [](const PolyhedralGraph& g) {
    auto rg = build_rhombic(g);
    std::vector<std::vector<int>> tracks;
    std::set<std::vector<int>> dedup;
    for (int ei = 0; ei < g.n_edges() && tracks.size() < 12; ++ei) {
      const auto& e = g.edges[ei];
      if (e.f_left < 0 || e.f_right < 0) continue;
      if (g.halo[e.u] || g.halo[e.v]) continue;
      for (int side : {0, 1}) {
        auto t = train_track(rg, ei, side);
        CHECK(std::set<int>(t.begin(), t.end()).size() == t.size());
        cplx tie = tie_vector(rg, ei, side);
        double prev = 0.0;
        bool first = true;
        int dir = 0;
        for (int id : t) {
          double s = std::imag(std::conj(tie) * rh_center(rg, id));
          if (!first) {
            int step = (s > prev) ? 1 : -1;
            CHECK(s != prev);
            if (dir == 0)
              dir = step;
            else
              CHECK(step == dir);
          }
          prev = s;
          first = false;
        }
        std::vector<int> key(t);
        std::sort(key.begin(), key.end());
        if (dedup.insert(key).second) tracks.push_back(std::move(key));
      }
    }
    REQUIRE(tracks.size() >= 4);
    for (std::size_t i = 0; i < tracks.size(); ++i)
      for (std::size_t j = i + 1; j < tracks.size(); ++j) {
        std::vector<int> common;
        std::set_intersection(tracks[i].begin(), tracks[i].end(),
                              tracks[j].begin(), tracks[j].end(),
                              std::back_inserter(common));
        CHECK(common.size() <= 1);
      }
  };
  run(lattice("triangular", 4));
  LatticeSpec q;
  q.kind = "quad_tiling";
  q.window = 3;
  q.alpha = {kPi / 3, 5 * kPi / 7, 13 * kPi / 9, 21 * kPi / 11};
  run(generate_lattice(q));
}
