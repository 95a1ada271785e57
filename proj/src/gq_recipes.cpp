#include <algorithm>

#include "mforge/elation.hpp"
#include "mforge/errors.hpp"

namespace mforge {

int lines_meet(const PolarSpace& g, int l1, int l2) {
  if (l1 < 0 || l2 < 0 || l1 == l2) return -1;
  for (int x : g.line_points(l1)) {
    if (g.line_contains(l2, x)) return x;
  }
  return -1;
}

void require_chain(const PolarSpace& g, const std::vector<int>& bases) {
  for (std::size_t k = 1; k < bases.size(); ++k) {
    if (g.collinear(bases[k - 1], bases[k])) {
      throw ChainNotOpposite("bases " + std::to_string(k - 1) + " and " + std::to_string(k) + " are collinear",
                             {static_cast<int>(k - 1), static_cast<int>(k)});
    }
  }
}

std::vector<int> line_points_except(const PolarSpace& g, int a, int b, std::vector<int> except) {
  std::vector<int> out;
  const int l = g.line_of(a, b);
  if (l < 0) return out;
  for (int x : g.line_points(l)) {
    if (std::find(except.begin(), except.end(), x) == except.end()) out.push_back(x);
  }
  return out;
}

std::vector<int> gq_common_neighbours(const PolarSpace& g, const GQView& gq, int x, int y, int except) {
  std::vector<int> out;
  for (int z : gq.points) {
    if (z != except && g.collinear(z, x) && g.collinear(z, y)) out.push_back(z);
  }
  return out;
}

GQRootData gq_root_data(const GQView& gq, const GQRoot& r, const GQApartment& a) {
  const auto& geom = gq.geom;
  GQRootData out{};
  if (r.kind == GQRootKind::First) {
    out.q = r.path[1];
    out.d = r.path[3];
    out.u = out.n = -1;
    for (int x : a.cycle) {
      if (x != out.q && geom.line_contains(r.path[0], x)) out.u = x;
      if (x != out.d && geom.line_contains(r.path[4], x)) out.n = x;
    }
  } else {
    out.q = r.path[0];
    out.d = r.path[2];
    out.n = r.path[4];
    out.u = -1;
    for (int x : a.cycle) {
      if (x != out.q && x != out.d && x != out.n) out.u = x;
    }
  }
  if (out.u < 0 || out.n < 0) throw PreconditionError("apartment does not contain the root");
  out.q = gq.global(out.q);
  out.d = gq.global(out.d);
  out.u = gq.global(out.u);
  out.n = gq.global(out.n);
  return out;
}

namespace {

void require_in_gq(const GQView& gq, std::initializer_list<int> pts) {
  for (int x : pts) {
    if (x < 0 || gq.local(x) < 0) throw PreconditionError("point is not in the GQ", {x});
  }
}

// q ⊥ d ⊥ n ⊥ u ⊥ q, q opposite n, d opposite u.
void require_gq_apartment(const PolarSpace& g, int a, int b, int c, int e) {
  const int cyc[4] = {a, b, c, e};
  for (int k = 0; k < 4; ++k) {
    const int x = cyc[k], y = cyc[(k + 1) % 4];
    if (x == y || !g.collinear(x, y)) throw PreconditionError("not a GQ apartment", {x, y});
  }
  if (g.collinear(a, c) || g.collinear(b, e)) throw PreconditionError("not a GQ apartment", {a, b, c, e});
}

int proj_on(const PolarSpace& g, int x, int a, int b) {
  const int l = g.line_of(a, b);
  return l < 0 ? -1 : proj_point_on_line(g, x, l);
}

}  // namespace

nlohmann::json FirstKindRecipe::to_json() const {
  return {{"kind", "gq-first"}, {"p", p}, {"b", b}, {"q", q}, {"d", d}, {"u", u}, {"n", n},
          {"u_target", u_t}, {"n_target", n_t}, {"j", j}, {"i", i}, {"l", l}, {"bases", bases()}};
}

nlohmann::json SecondKindRecipe::to_json() const {
  return {{"kind", "gq-second"}, {"p", p}, {"b", b}, {"d", d}, {"q", q}, {"u", u}, {"n", n},
          {"u_target", u_t}, {"j_prime", jp}, {"j_second", jpp}, {"l", l}, {"j", j}, {"bases", bases()}};
}

FirstKindElation build_first_kind_gq_elation(const PolarSpace& g, const GQView& gq, int q, int d, int u, int n,
                                             int u_t, int j) {
  require_in_gq(gq, {q, d, u, n, u_t});
  require_gq_apartment(g, q, d, n, u);
  const int p = gq.p, b = gq.b;
  const int uq = g.line_of(u, q);
  if (u_t == q || !g.line_contains(uq, u_t)) throw PreconditionError("target not on uq minus q", {u_t});
  const int pq = g.line_of(p, q);
  if (j == p || j == q || !g.line_contains(pq, j)) throw PreconditionError("j not on pq minus {p, q}", {j});

  FirstKindRecipe r{p, b, q, d, u, n, u_t, -1, j, -1, -1};
  r.n_t = proj_on(g, u_t, d, n);
  r.i = lines_meet(g, g.line_of(j, u), g.line_of(p, u_t));
  if (r.i < 0) throw RecipeDegenerate("ju and pu' do not meet", {j, u, u_t});
  r.l = proj_on(g, r.i, b, d);
  if (r.l < 0) throw RecipeDegenerate("projection of i onto bd undefined", {r.i});
  require_chain(g, r.bases());
  Projectivity theta = compose_projectivity(g, r.bases());
  Perm action = gq_action(g, theta, gq);
  return {r, std::move(theta), std::move(action)};
}

SecondKindElation build_second_kind_gq_elation(const PolarSpace& g, const GQView& gq, int d, int q, int u, int n,
                                               int u_t, int jp) {
  require_in_gq(gq, {d, q, u, n, u_t});
  require_gq_apartment(g, d, q, u, n);
  if (u_t == d || !g.collinear(u_t, q) || !g.collinear(u_t, n)) {
    throw PreconditionError("target not in {q,n}-perp minus d", {u_t});
  }
  const int p = gq.p, b = gq.b;
  const int bu = g.line_of(b, u);
  if (jp == b || jp == u || !g.line_contains(bu, jp)) throw PreconditionError("j' not on bu minus {b, u}", {jp});

  SecondKindRecipe r{p, b, d, q, u, n, u_t, jp, -1, -1, -1};
  r.jpp = proj_on(g, jp, p, u_t);
  if (r.jpp < 0 || r.jpp == jp) throw RecipeDegenerate("projection of j' onto pu' undefined", {jp});
  r.l = proj_on(g, d, jp, r.jpp);
  if (r.l < 0) throw RecipeDegenerate("projection of d onto j'j'' undefined", {d});
  r.j = proj_on(g, jp, p, d);
  if (r.j < 0) throw RecipeDegenerate("projection of j' onto pd undefined", {jp});
  r.l_perp_n = g.collinear(r.l, n);
  r.l_perp_q = g.collinear(r.l, q);
  require_chain(g, r.bases());
  Projectivity theta = compose_projectivity(g, r.bases());
  Perm action = gq_action(g, theta, gq);
  return {r, std::move(theta), std::move(action)};
}

namespace {

bool lines_through_stable(const GQView& gq, const Perm& act, int x) {
  const auto& geom = gq.geom;
  for (int l : geom.point_lines[gq.local(x)]) {
    if (geom.line_of(act[geom.lines[l][0]], act[geom.lines[l][1]]) != l) return false;
  }
  return true;
}

bool line_fixed_pointwise(const PolarSpace& g, const GQView& gq, const Perm& act, int a, int c) {
  for (int x : g.line_points(g.line_of(a, c))) {
    if (act[gq.local(x)] != gq.local(x)) return false;
  }
  return true;
}

}  // namespace

VariantAResult observation_variant_a(const PolarSpace& g, const GQView& gq, int q, int d, int u, int n, int v,
                                     int v_t, int j) {
  require_in_gq(gq, {q, d, u, n, v, v_t});
  require_gq_apartment(g, q, d, n, u);
  const int p = gq.p, b = gq.b;
  const int uq = g.line_of(u, q);
  for (int x : {v, v_t}) {
    if (x == u || x == q || !g.line_contains(uq, x)) throw PreconditionError("point not on uq minus {u, q}", {x});
  }
  const int pq = g.line_of(p, q);
  if (j == p || j == q || !g.line_contains(pq, j)) throw PreconditionError("j not on pq minus {p, q}", {j});
  VariantAResult r{p, b, q, d, u, n, v, v_t, j, -1, -1, {}, {}};
  r.i = lines_meet(g, g.line_of(p, v_t), g.line_of(j, v));
  if (r.i < 0) throw RecipeDegenerate("pv' and jv do not meet", {v, v_t});
  r.l = proj_on(g, r.i, b, n);
  if (r.l < 0) throw RecipeDegenerate("projection onto bn undefined", {r.i});
  const std::vector<int> bases{p, b, j, r.l, p};
  require_chain(g, bases);
  r.theta = compose_projectivity(g, bases);
  r.action = gq_action(g, r.theta, gq);
  r.moves_v = r.action[gq.local(v)] == gq.local(v_t);
  r.lines_through_q_stable = lines_through_stable(gq, r.action, q);
  r.lines_through_n_stable = lines_through_stable(gq, r.action, n);
  return r;
}

VariantBResult observation_variant_b(const PolarSpace& g, const GQView& gq, int q, int d, int u, int n, int j, int l) {
  require_in_gq(gq, {q, d, u, n});
  require_gq_apartment(g, q, d, n, u);
  const int p = gq.p, b = gq.b;
  const int pq = g.line_of(p, q), bq = g.line_of(b, q);
  if (j == p || j == q || !g.line_contains(pq, j)) throw PreconditionError("j not on pq minus {p, q}", {j});
  if (l == q || !g.line_contains(bq, l)) throw PreconditionError("l not on bq minus q", {l});
  VariantBResult r{p, b, q, d, u, n, j, l, {}, {}};
  const std::vector<int> bases{p, b, j, l, p};
  require_chain(g, bases);
  r.theta = compose_projectivity(g, bases);
  r.action = gq_action(g, r.theta, gq);
  r.fixes_planes_pq = lines_through_stable(gq, r.action, q);
  r.fixes_lines_puq = line_fixed_pointwise(g, gq, r.action, u, q);
  r.fixes_lines_pdq = line_fixed_pointwise(g, gq, r.action, d, q);
  r.identity = is_identity(r.action);

  const int bn = g.line_of(b, n), pn = g.line_of(p, n);
  const int j1 = proj_point_on_line(g, j, bn);
  const int k1 = j1 < 0 ? -1 : g.line_of(j1, j);
  const int l1 = k1 < 0 ? -1 : proj_point_on_line(g, l, k1);
  const int k2 = l1 < 0 ? -1 : g.line_of(l1, l);
  if (k2 >= 0) {
    r.grid_lines = {pn, k1, bq, pq, k2, bn};
    std::vector<int> s = r.grid_lines;
    std::sort(s.begin(), s.end());
    const bool distinct = std::unique(s.begin(), s.end()) == s.end();
    r.grid = distinct && lines_meet(g, k2, pn) >= 0;
  }
  return r;
}

}  // namespace mforge
