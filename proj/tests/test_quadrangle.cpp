#include <set>

#include "doctest.h"
#include "mforge/elation.hpp"
#include "mforge/errors.hpp"
#include "mforge/frames.hpp"
#include "mforge/oracle.hpp"
#include "mforge/verifier.hpp"

using namespace mforge;

namespace {

struct Quad {
  PolarSpace g;
  GQView gq;
  std::vector<GQApartment> aps;
  std::vector<GQRoot> roots;
};

Quad make_quad(int q) {
  auto g = build_polar_space(FormSpec::standard("w5", q));
  int b = 0;
  while (!g.opposite(0, b)) ++b;
  auto gq = gq_from_opposite(g, 0, b);
  auto aps = gq_apartments(gq.geom);
  auto roots = gq_roots(aps, gq.geom);
  return {std::move(g), std::move(gq), std::move(aps), std::move(roots)};
}

// Ordered 4-cycles x0~x1~x2~x3~x0 with x0,x2 and x1,x3 non-collinear, counted from adjacency alone.
long count_quadrangles(const PointLineGeometry& gq) {
  long n = 0;
  const int v = gq.num_points;
  for (int a = 0; a < v; ++a) {
    for (int b = 0; b < v; ++b) {
      if (b == a || !gq.collinear[a][b]) continue;
      for (int c = 0; c < v; ++c) {
        if (c == b || !gq.collinear[b][c] || gq.collinear[a][c]) continue;
        for (int d = 0; d < v; ++d) {
          if (d != a && d != c && gq.collinear[c][d] && gq.collinear[d][a] && !gq.collinear[b][d]) ++n;
        }
      }
    }
  }
  return n;
}

}  // namespace

TEST_CASE("residual quadrangle parameters") {
  for (int q : {2, 3}) {
    const auto Q = make_quad(q);
    CHECK(Q.gq.geom.is_gq());
    CHECK(Q.gq.num_points() == (q + 1) * (q * q + 1));
    CHECK(Q.gq.num_lines() == (q + 1) * (q * q + 1));
    for (const auto& l : Q.gq.geom.lines) CHECK(l.size() == std::size_t(q + 1));
  }
}

TEST_CASE("apartment and root enumeration agree with a 4-cycle count") {
  for (int q : {2, 3}) {
    const auto Q = make_quad(q);
    const long cycles = count_quadrangles(Q.gq.geom);
    CHECK(static_cast<long>(Q.aps.size()) == cycles / 8);
    // Each apartment carries eight roots, each root lies in q apartments.
    CHECK(static_cast<long>(Q.roots.size()) == cycles / 8 * 8 / q);
    for (std::size_t k = 0; k < Q.roots.size(); k += 37) {
      CHECK(gq_apartments_containing(Q.aps, Q.roots[k]).size() == std::size_t(q));
    }
  }
  CHECK(make_quad(2).aps.size() == 90);
}

TEST_CASE("residue projections between opposite points are mutually inverse") {
  const auto g = build_polar_space(FormSpec::standard("w5", 3));
  int b = 0;
  while (!g.opposite(5, b)) ++b;
  for (int l : g.lines_through(5)) {
    CHECK(residue_projection_line(g, b, 5, residue_projection_line(g, 5, b, l)) == l);
  }
  for (int pi : g.planes_through(5)) {
    CHECK(residue_projection_plane(g, b, 5, residue_projection_plane(g, 5, b, pi)) == pi);
  }
  CHECK_THROWS_AS(compose_projectivity(g, {5, 5}), ConsecutiveNotOpposite);
}

TEST_CASE("first-kind recipe: every instance of one root") {
  const auto Q = make_quad(2);
  const auto& g = Q.g;
  int checked = 0;
  for (std::size_t k = 0; k < Q.roots.size() && checked < 40; ++k) {
    if (Q.roots[k].kind != GQRootKind::First) continue;
    for (int ai : gq_apartments_containing(Q.aps, Q.roots[k])) {
      const auto D = gq_root_data(Q.gq, Q.roots[k], Q.aps[ai]);
      for (int ut : line_points_except(g, D.u, D.q, {D.q})) {
        for (int j : line_points_except(g, Q.gq.p, D.q, {Q.gq.p, D.q})) {
          const auto e = build_first_kind_gq_elation(g, Q.gq, D.q, D.d, D.u, D.n, ut, j);
          CHECK(certify_gq_root_elation(Q.gq.geom, Q.aps, e.action, Q.roots[k]).pass);
          CHECK(e.action[Q.gq.local(D.u)] == Q.gq.local(ut));
          CHECK(is_identity(e.action) == (ut == D.u));
          const auto bases = e.recipe.bases();
          CHECK(bases.size() == 5);
          CHECK(bases.front() == bases.back());
          ++checked;
        }
      }
    }
  }
  CHECK(checked >= 40);
}

TEST_CASE("second-kind recipe: lines perpendicular and certified") {
  const auto Q = make_quad(3);
  const auto& g = Q.g;
  int checked = 0;
  for (std::size_t k = 0; k < Q.roots.size() && checked < 30; k += 53) {
    if (Q.roots[k].kind != GQRootKind::Second) continue;
    const int ai = gq_apartments_containing(Q.aps, Q.roots[k]).front();
    const auto D = gq_root_data(Q.gq, Q.roots[k], Q.aps[ai]);
    for (int ut : gq_common_neighbours(g, Q.gq, D.q, D.n, D.d)) {
      const int jp = line_points_except(g, Q.gq.b, D.u, {Q.gq.b, D.u}).front();
      const auto e = build_second_kind_gq_elation(g, Q.gq, D.d, D.q, D.u, D.n, ut, jp);
      CHECK(e.recipe.l_perp_n);
      CHECK(e.recipe.l_perp_q);
      CHECK(certify_gq_root_elation(Q.gq.geom, Q.aps, e.action, Q.roots[k]).pass);
      CHECK(e.action[Q.gq.local(D.u)] == Q.gq.local(ut));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("GQ root groups have order q") {
  for (int q : {2, 3}) {
    const auto Q = make_quad(q);
    for (std::size_t k = 0; k < Q.roots.size(); k += q == 2 ? 7 : 311) {
      const auto fam = gq_root_elation_oracle(Q.gq.geom, Q.aps, Q.roots[k]);
      CHECK(fam.size() == std::size_t(q));
      CHECK(std::count_if(fam.begin(), fam.end(), [](const Perm& p) { return is_identity(p); }) == 1);
    }
  }
}

TEST_CASE("variant B grid at q = 2 gives the identity") {
  const auto Q = make_quad(2);
  const auto& g = Q.g;
  bool grid = false;
  for (std::size_t k = 0; k < Q.roots.size() && !grid; ++k) {
    if (Q.roots[k].kind != GQRootKind::First) continue;
    const int ai = gq_apartments_containing(Q.aps, Q.roots[k]).front();
    const auto D = gq_root_data(Q.gq, Q.roots[k], Q.aps[ai]);
    const int j = line_points_except(g, Q.gq.p, D.q, {Q.gq.p, D.q}).front();
    for (int l : line_points_except(g, Q.gq.b, D.q, {D.q})) {
      const auto r = observation_variant_b(g, Q.gq, D.q, D.d, D.u, D.n, j, l);
      if (!r.grid) continue;
      grid = true;
      CHECK(r.identity);
      std::set<int> lines(r.grid_lines.begin(), r.grid_lines.end());
      CHECK(lines.size() == 6);
    }
  }
  CHECK(grid);
}

TEST_CASE("variant A at q = 3 moves v") {
  const auto Q = make_quad(3);
  const auto& g = Q.g;
  std::size_t k = 0;
  while (Q.roots[k].kind != GQRootKind::First) ++k;
  const auto D = gq_root_data(Q.gq, Q.roots[k], Q.aps[gq_apartments_containing(Q.aps, Q.roots[k]).front()]);
  const auto vs = line_points_except(g, D.u, D.q, {D.u, D.q});
  REQUIRE(vs.size() == 2);
  for (int j : line_points_except(g, Q.gq.p, D.q, {Q.gq.p, D.q})) {
    const auto r = observation_variant_a(g, Q.gq, D.q, D.d, D.u, D.n, vs[0], vs[1], j);
    CHECK(r.moves_v);
    CHECK(r.lines_through_q_stable);
    CHECK(r.lines_through_n_stable);
  }
  CHECK_THROWS_AS(observation_variant_a(g, Q.gq, D.q, D.d, D.u, D.n, D.u, vs[1], vs[0]), PreconditionError);
}
