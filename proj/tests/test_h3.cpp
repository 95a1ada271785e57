#include <cmath>
#include <set>

#include "doctest.h"
#include "mforge/errors.hpp"
#include "mforge/h3.hpp"

using namespace mforge;

namespace {

// Icosahedron from floating coordinates; edge length 2.
std::vector<std::vector<int>> float_graph_distances() {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  std::vector<std::array<double, 3>> v;
  for (int c = 0; c < 3; ++c) {
    for (int s1 : {1, -1}) {
      for (int s2 : {1, -1}) {
        std::array<double, 3> x{};
        x[(c + 1) % 3] = s1;
        x[(c + 2) % 3] = s2 * phi;
        v.push_back(x);
      }
    }
  }
  const int n = static_cast<int>(v.size());
  std::vector<std::vector<int>> d(n, std::vector<int>(n, 99));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += (v[a][k] - v[b][k]) * (v[a][k] - v[b][k]);
      if (a == b) d[a][b] = 0;
      else if (std::abs(s - 4) < 1e-9) d[a][b] = 1;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("icosahedron distances match the floating model") {
  const auto g = build_icosahedron();
  CHECK(g.dist == float_graph_distances());
  CHECK(g.lines.size() == 30);
  CHECK(g.planes.size() == 20);
  for (int p = 0; p < 12; ++p) {
    int c[4] = {0, 0, 0, 0};
    for (int x = 0; x < 12; ++x) ++c[g.dist[p][x]];
    CHECK(c[0] == 1);
    CHECK(c[1] == 5);
    CHECK(c[2] == 5);
    CHECK(c[3] == 1);
  }
}

TEST_CASE("pair classification certificates") {
  const auto g = build_icosahedron();
  for (int p = 0; p < 12; ++p) {
    for (int b = 0; b < 12; ++b) {
      const auto r = classify_pair(g, p, b);
      CHECK(r.certificate_ok);
      if (r.cls == H3Class::Opposite) {
        CHECK(r.pentagon_p.size() == 5);
        CHECK(r.pentagon_b.size() == 5);
      }
    }
  }
}

TEST_CASE("projections swap lines and planes and invert") {
  const auto g = build_icosahedron();
  const auto L = h3_labels(g, 0);
  for (int i = 0; i < 5; ++i) {
    const int line = g.line_of(0, L.bi[i]);
    const int plane = h3_proj_line(g, 0, line, L.p);
    CHECK(plane == g.plane_of(L.p, L.pi[i], L.pi[(i + 1) % 5]));
    CHECK(h3_proj_plane(g, L.p, plane, 0) == line);
  }
  CHECK_THROWS_AS(h3_proj_line(g, 0, g.line_of(0, L.bi[0]), L.bi[2]), NotOpposite);
  CHECK_THROWS_AS(h3_proj_line(g, 0, g.line_of(L.bi[1], L.bi[2]), L.p), PreconditionError);
}

TEST_CASE("chains in the thin model are trivial") {
  const auto g = build_icosahedron();
  const auto L = h3_labels(g, 3);
  const Element e{1, g.line_of(3, L.bi[2])};
  const auto r = h3_chain_eval(g, {3, L.p, 3, L.p, 3}, e);
  CHECK(r.image == e);
  CHECK(r.log.size() == 5);
  CHECK(r.log[1].dim == 2);
  CHECK_THROWS_AS(h3_chain_eval(g, {3, L.bi[0]}, e), ConsecutiveNotOpposite);
}

TEST_CASE("thick recipe is not instantiable and residues are rigid") {
  const auto g = build_icosahedron();
  const auto pre = h3_recipe_preconditions(g, 0);
  CHECK(pre.choices_b4.empty());
  CHECK(pre.choices_d.empty());
  CHECK(pre.conclusion == "NotInstantiableInThinModel");
  CHECK(pre.table_ok == pre.table_rows);
  const auto rig = h3_residual_rigidity(g, 0, 8);
  CHECK(rig.pass);
  CHECK(rig.group_order == 1);
  CHECK(rig.chains == 4);
}

TEST_CASE("pentagon feasibility") {
  const auto one = pentagon_feasibility(1, 1);
  CHECK(one.feasible);
  CHECK(one.v == 5);
  CHECK(one.k == 2);
  // Integer screen of the point graph alone; its survivors fail on the line graph.
  auto plain_survivor = [](long s, long t) {
    const long v = 1 + s * (t + 1) * (1 + s * t), k = s * (t + 1), lam = s - 1;
    const long d = (lam - 1) * (lam - 1) + 4 * (k - 1);
    const long r = std::lround(std::sqrt(static_cast<double>(d)));
    if (r * r != d) return false;
    const long num = (v - 1) * r - (2 * k + (v - 1) * (lam - 1));
    return num % (2 * r) == 0 && num >= 0 && (v - 1) * r + (2 * k + (v - 1) * (lam - 1)) >= 0;
  };
  std::set<std::pair<int, int>> survivors;
  for (int s = 2; s <= 20; ++s) {
    for (int t = 2; t <= 20; ++t) {
      const auto f = pentagon_feasibility(s, t);
      CHECK_FALSE(f.feasible);
      CHECK(f.v == 1 + s * (t + 1) * (1 + s * t));
      if (plain_survivor(s, t)) survivors.insert({s, t});
      CHECK_FALSE((plain_survivor(s, t) && plain_survivor(t, s)));
    }
  }
  const std::set<std::pair<int, int>> frozen{{3, 6}, {4, 3}, {4, 8}, {4, 15}, {6, 12}, {7, 14}, {8, 6}, {9, 4},
                                             {9, 18}, {10, 20}, {12, 9}, {16, 5}, {16, 12}, {18, 20}, {20, 15}};
  for (const auto& st : frozen) {
    CHECK(plain_survivor(st.first, st.second));
    CHECK(pentagon_feasibility(st.first, st.second).reason.rfind("lines:", 0) == 0);
  }
  CHECK(survivors == frozen);
}
