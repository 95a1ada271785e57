#include <algorithm>

#include "mforge/elation.hpp"
#include "mforge/errors.hpp"

namespace mforge {

int PlaneElation::image(int x) const {
  auto it = std::lower_bound(points.begin(), points.end(), x);
  if (it == points.end() || *it != x) return -1;
  return images[it - points.begin()];
}

PlaneElation plane_elation_build(const PolarSpace& g, int plane, int center, int axis, int m, int m_t) {
  if (plane < 0 || axis < 0 || !g.line_contains(axis, center)) throw BadConfiguration("center not on axis", {center});
  for (int x : g.line_points(axis)) {
    if (!g.plane_contains(plane, x)) throw BadConfiguration("axis not in plane", {axis});
  }
  if (!g.plane_contains(plane, m) || g.line_contains(axis, m)) throw BadConfiguration("m not in plane minus axis", {m});
  const int cm = g.line_of(center, m);
  if (m_t == center || !g.line_contains(cm, m_t)) throw BadConfiguration("m' not on center-m minus center", {m_t});

  const PrimeField& f = g.field();
  const int dim = g.dim();
  const Vec& c = g.vec(center);
  const Vec& mv = g.vec(m);
  int other = g.line_points(axis)[0] == center ? g.line_points(axis)[1] : g.line_points(axis)[0];
  const Vec& a2 = g.vec(other);
  int t = -1;
  for (int s = 0; s < f.order() && t < 0; ++s) {
    if (g.point_id(f.axpy(static_cast<std::uint8_t>(s), c, mv, dim)) == m_t) t = s;
  }
  PlaneElation e{plane, center, axis, m, m_t, g.plane_points(plane), {}};
  e.images.assign(e.points.size(), -1);
  const int q = f.order();
  for (int code = 1; code < q * q * q; ++code) {
    const auto al = static_cast<std::uint8_t>(code % q), be = static_cast<std::uint8_t>(code / q % q),
               ga = static_cast<std::uint8_t>(code / (q * q));
    Vec x = f.axpy(al, c, f.axpy(be, a2, f.scale(mv, ga, dim), dim), dim);
    Vec y = f.axpy(f.mul(ga, static_cast<std::uint8_t>(t)), c, x, dim);
    const int xi = g.point_id(x);
    auto it = std::lower_bound(e.points.begin(), e.points.end(), xi);
    e.images[it - e.points.begin()] = g.point_id(y);
  }
  return e;
}

namespace {

bool lines_opposite(const PolarSpace& g, int K, int M) {
  if (K == M) return false;
  for (int x : g.line_points(K)) {
    if (proj_point_on_line(g, x, M) < 0) return false;
  }
  for (int x : g.line_points(M)) {
    if (proj_point_on_line(g, x, K) < 0) return false;
  }
  return true;
}

int index_on_line(const PolarSpace& g, int l, int x) {
  const auto& pts = g.line_points(l);
  return static_cast<int>(std::lower_bound(pts.begin(), pts.end(), x) - pts.begin());
}

}  // namespace

std::vector<int> copy_action(const PolarSpace& g, int K, int M, const std::vector<int>& eta_on_K) {
  if (!lines_opposite(g, K, M)) throw LinesNotOpposite("lines are not opposite", {K, M});
  std::vector<int> out;
  for (int x : g.line_points(M)) {
    const int k = proj_point_on_line(g, x, K);
    out.push_back(proj_point_on_line(g, eta_on_K[index_on_line(g, K, k)], M));
  }
  return out;
}

EtaMap build_eta(const PolarSpace& g, int d, int q, int m, int m_t, int seed_plane) {
  if (d == q || !g.collinear(d, q)) throw PreconditionError("d and q must be distinct collinear points", {d, q});
  if (m == d || !g.collinear(m, d) || !g.collinear(m, m_t) || m_t == d) {
    throw PreconditionError("need m, m' on a line through d", {m, m_t});
  }
  if (m != m_t && !g.line_contains(g.line_of(m, m_t), d)) throw PreconditionError("d not on mm'", {m, m_t});
  if (g.collinear(m, q)) throw PreconditionError("m collinear to q", {m, q});

  const int n = g.num_points();
  const int dq = g.line_of(d, q);
  if (seed_plane < 0) seed_plane = g.planes_on_line(dq).front();
  if (!g.plane_contains(seed_plane, d) || !g.plane_contains(seed_plane, q)) {
    throw PreconditionError("seed plane does not contain dq", {seed_plane});
  }
  std::vector<int> on_L;
  for (int x : g.plane_points(seed_plane)) {
    if (g.collinear(x, m)) on_L.push_back(x);
  }
  const int L = g.line_id(on_L);
  const int beta = g.plane_of(L, m);
  const PlaneElation seed = plane_elation_build(g, beta, d, L, m, m_t);

  EtaMap eta{d, q, m, m_t, seed_plane, Perm(n, -1), std::vector<EtaSource>(n, EtaSource::Outside), {}, 0};
  eta.copied_via.assign(n, {-1, -1});

  auto far_lines = [&](int c, int other) {
    std::vector<int> out;
    for (int l : g.lines_through(c)) {
      bool inside = true;
      for (int x : g.line_points(l)) inside = inside && g.collinear(x, other);
      if (!inside) out.push_back(l);
    }
    return out;
  };
  const auto d_lines = far_lines(d, q), q_lines = far_lines(q, d);
  std::vector<std::vector<int>> act(g.num_lines());
  std::vector<int> origin(g.num_lines(), -1);

  std::vector<int> seeds;
  for (int K : d_lines) {
    if (!g.plane_contains(beta, g.line_points(K)[0]) || !g.plane_contains(beta, g.line_points(K).back())) continue;
    for (int x : g.line_points(K)) act[K].push_back(seed.image(x));
    seeds.push_back(K);
  }
  auto record = [&](int target, int via, std::vector<int> img, int& checks, int& bad) {
    ++eta.copies;
    if (act[target].empty()) {
      act[target] = std::move(img);
      origin[target] = via;
      return;
    }
    ++checks;
    if (act[target] != img) {
      ++bad;
      if (eta.star_witness.empty()) eta.star_witness = {via, target};
    }
  };
  for (int M : q_lines) {
    for (int K : seeds) record(M, K, copy_action(g, K, M, act[K]), eta.star_checks, eta.star_mismatches);
  }
  for (int K : d_lines) {
    for (int M : q_lines) {
      if (!act[M].empty()) record(K, M, copy_action(g, M, K, act[M]), eta.back_checks, eta.back_mismatches);
    }
  }

  for (int x = 0; x < n; ++x) {
    if (g.collinear(x, d) && g.collinear(x, q)) {
      eta.image[x] = x;
      eta.source[x] = EtaSource::Fixed;
    }
  }
  for (const auto* family : {&d_lines, &q_lines}) {
    for (int l : *family) {
      if (act[l].empty()) throw CoverageIncomplete("line not reached by copying", {l});
      const auto& pts = g.line_points(l);
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const int x = pts[k];
        if (eta.source[x] == EtaSource::Fixed) continue;
        eta.image[x] = act[l][k];
        const bool seeded = origin[l] < 0;
        eta.source[x] = seeded ? EtaSource::Seed : EtaSource::Copied;
        if (!seeded) eta.copied_via[x] = {origin[l], l};
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    if ((g.collinear(x, d) || g.collinear(x, q)) && eta.image[x] < 0) {
      throw CoverageIncomplete("domain point not covered", {x});
    }
  }
  return eta;
}

EtaProperties check_eta(const PolarSpace& g, const EtaMap& eta) {
  EtaProperties res;
  const int n = g.num_points();
  std::vector<int> domain;
  for (int x = 0; x < n; ++x) {
    if (eta.in_domain(x)) domain.push_back(x);
  }
  res.fixes_common = true;
  for (int x : domain) {
    if (g.collinear(x, eta.d) && g.collinear(x, eta.q) && eta(x) != x) {
      res.fixes_common = false;
      res.failure = "point of the common perp moved";
      res.witness = {x};
      return res;
    }
  }

  res.translations = true;
  for (auto [c, other] : {std::pair{eta.d, eta.q}, std::pair{eta.q, eta.d}}) {
    for (int pi : g.planes_through(c)) {
      if (g.plane_contains(pi, other)) continue;
      ++res.planes_checked;
      std::vector<int> img;
      for (int x : g.plane_points(pi)) img.push_back(eta(x));
      std::sort(img.begin(), img.end());
      bool ok = img == g.plane_points(pi);
      for (int l : g.plane_lines(pi)) {
        if (!ok) break;
        std::vector<int> li;
        for (int x : g.line_points(l)) li.push_back(eta(x));
        std::sort(li.begin(), li.end());
        const int il = g.line_id(li);
        ok = il >= 0;
        const bool axis = std::all_of(g.line_points(l).begin(), g.line_points(l).end(),
                                      [&](int x) { return g.collinear(x, other); });
        if (ok && axis) {
          for (int x : g.line_points(l)) ok = ok && eta(x) == x;
        }
        if (ok && g.line_contains(l, c)) ok = il == l;
      }
      if (!ok) {
        res.translations = false;
        res.failure = "plane through a centre not acted on by an elation";
        res.witness = {pi};
        return res;
      }
    }
  }

  res.collinearity = true;
  for (std::size_t a = 0; a < domain.size(); ++a) {
    for (std::size_t b = a + 1; b < domain.size(); ++b) {
      ++res.pairs_checked;
      const int x = domain[a], y = domain[b];
      if (eta(x) == eta(y) || g.collinear(x, y) != g.collinear(eta(x), eta(y))) {
        res.collinearity = false;
        res.failure = "collinearity not preserved";
        res.witness = {x, y};
        return res;
      }
    }
  }
  return res;
}

std::vector<std::pair<int, int>> host_pairs(const PolarSpace& g, int d, int q, int x) {
  const int pts[3] = {d, q, x};
  const auto s = to_ids(g.perp(std::span<const int>(pts, 3)));
  std::vector<std::pair<int, int>> out;
  for (int p : s) {
    for (int b : s) {
      if (g.opposite(p, b)) out.emplace_back(p, b);
    }
  }
  return out;
}

namespace {

struct HostSetup {
  int n, n_t, u, u_t, j;
};

// n: lowest point of Γ in d⊥∖q⊥; u: lowest point of Γ collinear to n and q other than d.
HostSetup host_setup(const PolarSpace& g, const GQView& gq, const EtaMap& eta) {
  HostSetup s{-1, -1, -1, -1, -1};
  for (int x : gq.points) {
    if (s.n < 0 && g.collinear(x, eta.d) && !g.collinear(x, eta.q)) s.n = x;
  }
  if (s.n < 0) throw PreconditionError("no point of the GQ in d-perp minus q-perp");
  for (int x : gq.points) {
    if (s.u < 0 && x != eta.d && g.collinear(x, s.n) && g.collinear(x, eta.q)) s.u = x;
  }
  s.n_t = eta(s.n);
  s.u_t = proj_point_on_line(g, s.n_t, g.line_of(s.u, eta.q));
  for (int x : g.line_points(g.line_of(gq.p, eta.q))) {
    if (s.j < 0 && x != gq.p && x != eta.q) s.j = x;
  }
  return s;
}

}  // namespace

EtaPb eta_pb(const PolarSpace& g, const EtaMap& eta, int x, int p, int b) {
  if (g.collinear(p, b)) throw PreconditionError("p and b not opposite", {p, b});
  for (int y : {eta.d, eta.q, x}) {
    if (!g.collinear(y, p) || !g.collinear(y, b)) throw PreconditionError("host pair not collinear to d, q, x", {y});
  }
  const GQView gq = gq_from_opposite(g, p, b);
  const HostSetup s = host_setup(g, gq, eta);
  EtaPb r{-1, p, b, s.n, s.n_t, s.u, s.u_t, s.j, false, 0,
          build_first_kind_gq_elation(g, gq, eta.q, eta.d, s.u, s.n, s.u_t, s.j)};
  const Perm& act = r.elation.action;
  r.image = gq.global(act[gq.local(x)]);
  r.global_map.assign(g.num_points(), -1);
  for (int y = 0; y < gq.num_points(); ++y) r.global_map[gq.global(y)] = gq.global(act[y]);
  r.boundary_agrees = true;
  for (int y : gq.points) {
    if (!eta.in_domain(y)) continue;
    ++r.boundary_checked;
    if (gq.global(act[gq.local(y)]) != eta(y)) r.boundary_agrees = false;
  }
  return r;
}

RestrictionCheck verify_gq_restrictions(const PolarSpace& g, const EtaMap& eta, const Perm& phi,
                                        std::size_t max_pairs) {
  RestrictionCheck res;
  const int dq[2] = {eta.d, eta.q};
  const auto s = to_ids(g.perp(std::span<const int>(dq, 2)));
  for (int p : s) {
    for (int b : s) {
      if (!g.opposite(p, b)) continue;
      if (max_pairs && static_cast<std::size_t>(res.pairs) >= max_pairs) break;
      ++res.pairs;
      const EtaPb r = eta_pb(g, eta, eta.d, p, b);
      for (int x = 0; x < g.num_points(); ++x) {
        if (r.global_map[x] >= 0 && r.global_map[x] != phi[x]) {
          res.failure = "restriction differs from the GQ elation";
          res.witness = {p, b, x};
          return res;
        }
      }
    }
  }
  res.pass = res.pairs > 0;
  if (!res.pass) res.failure = "no opposite pair in the common perp";
  return res;
}

CopyCoherence verify_copy_coherence(const PolarSpace& g, const EtaMap& eta, int p, int b) {
  CopyCoherence res;
  for (int x : {p, b}) {
    if (!g.collinear(x, eta.d) || !g.collinear(x, eta.q)) throw PreconditionError("host point not in {d,q}-perp", {x});
  }
  const GQView gp = gq_from_opposite(g, p, b);
  const GQView gb = gq_from_opposite(g, b, p);
  const HostSetup sp = host_setup(g, gp, eta);
  const HostSetup sb = host_setup(g, gb, eta);
  const auto ep = build_first_kind_gq_elation(g, gp, eta.q, eta.d, sp.u, sp.n, sp.u_t, sp.j);
  const auto eb = build_first_kind_gq_elation(g, gb, eta.q, eta.d, sb.u, sb.n, sb.u_t, sb.j);
  for (int L : g.lines_through(b)) {
    ++res.lines_checked;
    const int copied = residue_projection_line(g, p, b, ep.theta.image_line(residue_projection_line(g, b, p, L)));
    if (copied != eb.theta.image_line(L)) {
      res.failure = "copied line action differs";
      return res;
    }
  }
  for (int pi : g.planes_through(b)) {
    ++res.planes_checked;
    const int copied = residue_projection_plane(g, p, b, ep.theta.image_plane(residue_projection_plane(g, b, p, pi)));
    if (copied != eb.theta.image_plane(pi)) {
      res.failure = "copied plane action differs";
      return res;
    }
  }
  for (int x : gb.points) {
    if (!eta.in_domain(x)) continue;
    if (eb.theta.image_line(g.line_of(b, x)) != g.line_of(b, eta(x))) {
      res.failure = "Res(b) elation disagrees with eta on the boundary";
      return res;
    }
  }
  res.pass = true;
  return res;
}

}  // namespace mforge
