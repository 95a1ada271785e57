#include <algorithm>
#include <map>

#include "mforge/elation.hpp"
#include "mforge/errors.hpp"

namespace mforge {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::FixedCoplanar: return "fixed-coplanar";
    case Provenance::Eta: return "eta";
    case Provenance::EtaPb: return "eta_pb";
    case Provenance::Fixed: return "fixed";
    case Provenance::OppositeO: return "opposite-o";
    case Provenance::PerpO: return "perp-o";
    case Provenance::Coplanar: return "coplanar";
  }
  return "?";
}

nlohmann::json Extension::to_json() const {
  std::map<std::string, int> hist;
  for (auto p : provenance) ++hist[provenance_name(p)];
  return {{"params", params}, {"permutation", perm}, {"provenance", hist},
          {"mismatches", mismatches}, {"comparisons", comparisons}};
}

Extension extend_first_kind(const PolarSpace& g, int d, int q, int m, int m_t, const FirstKindOptions& opt) {
  return extend_first_kind(g, build_eta(g, d, q, m, m_t, opt.seed_plane), opt);
}

Extension extend_first_kind(const PolarSpace& g, const EtaMap& eta, const FirstKindOptions& opt) {
  const int n = g.num_points();
  Extension ext;
  ext.perm.assign(n, -1);
  ext.provenance.assign(n, Provenance::Eta);
  ext.host.assign(n, {-1, -1});
  ext.params = {{"kind", "first"}, {"d", eta.d}, {"q", eta.q}, {"m", eta.m}, {"m_target", eta.m_t},
                {"seed_plane", eta.seed_plane}};
  std::map<std::pair<int, int>, Perm> cache;
  auto host_map = [&](int x, std::pair<int, int> pb) -> const Perm& {
    auto it = cache.find(pb);
    if (it == cache.end()) {
      EtaPb r = eta_pb(g, eta, x, pb.first, pb.second);
      ++ext.comparisons;
      if (!r.boundary_agrees) {
        ++ext.mismatches;
        if (ext.mismatch_witness.empty()) ext.mismatch_witness = {pb.first, pb.second};
      }
      it = cache.emplace(pb, std::move(r.global_map)).first;
    }
    return it->second;
  };
  for (int x = 0; x < n; ++x) {
    const bool on_d = g.collinear(x, eta.d), on_q = g.collinear(x, eta.q);
    if (on_d && on_q) {
      ext.perm[x] = x;
      ext.provenance[x] = Provenance::FixedCoplanar;
    } else if (on_d || on_q) {
      ext.perm[x] = eta(x);
    } else {
      const auto pairs = host_pairs(g, eta.d, eta.q, x);
      if (pairs.empty()) throw NoHostPair("no admissible host pair", {x});
      ext.provenance[x] = Provenance::EtaPb;
      ext.host[x] = pairs.front();
      ext.perm[x] = host_map(x, pairs.front())[x];
      if (!opt.all_host_pairs) continue;
      for (std::size_t k = 1; k < pairs.size(); ++k) {
        ++ext.comparisons;
        if (host_map(x, pairs[k])[x] != ext.perm[x]) {
          ++ext.mismatches;
          if (ext.mismatch_witness.empty()) ext.mismatch_witness = {x, pairs[k].first, pairs[k].second};
        }
      }
    }
  }
  return ext;
}

namespace {

// Action of a collineation of Res(c) on its lines and planes, indexed like
// lines_through(c) and planes_through(c).
struct ResidueAction {
  std::vector<int> lines, planes;
  bool empty() const { return lines.empty(); }
  bool operator==(const ResidueAction&) const = default;
};

int index_in(const std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  return it != v.end() && *it == x ? static_cast<int>(it - v.begin()) : -1;
}

ResidueAction from_projectivity(const Projectivity& t) { return {t.line_images(), t.plane_images()}; }

ResidueAction copy_residue(const PolarSpace& g, int a, const ResidueAction& act, int b) {
  ResidueAction out;
  const auto& la = g.lines_through(a);
  const auto& pa = g.planes_through(a);
  for (int K : g.lines_through(b)) {
    const int pre = residue_projection_line(g, b, a, K);
    out.lines.push_back(residue_projection_line(g, a, b, act.lines[index_in(la, pre)]));
  }
  for (int pi : g.planes_through(b)) {
    const int pre = residue_projection_plane(g, b, a, pi);
    out.planes.push_back(residue_projection_plane(g, a, b, act.planes[index_in(pa, pre)]));
  }
  return out;
}

int line_image(const PolarSpace& g, int c, const ResidueAction& act, int line) {
  return act.lines[index_in(g.lines_through(c), line)];
}
int plane_image(const PolarSpace& g, int c, const ResidueAction& act, int plane) {
  return act.planes[index_in(g.planes_through(c), plane)];
}

std::vector<int> common_points(const PolarSpace& g, const std::vector<int>& pts, const PointSet& other) {
  std::vector<int> out;
  for (int x : pts) {
    if (other[x]) out.push_back(x);
  }
  return out;
}

std::vector<int> perp_in(const PolarSpace& g, const std::vector<int>& pts, int w) {
  std::vector<int> out;
  for (int x : pts) {
    if (g.collinear(x, w)) out.push_back(x);
  }
  return out;
}

}  // namespace

Extension extend_second_kind(const PolarSpace& g, const SecondKindConfig& c) {
  const int n = g.num_points();
  const auto& apts = g.plane_points(c.alpha);
  const auto& bpts = g.plane_points(c.beta);
  if (common_points(g, apts, g.plane_set(c.beta)) != std::vector<int>{c.o}) {
    throw PreconditionError("planes must meet exactly in o", {c.alpha, c.beta, c.o});
  }
  for (auto [l, pl] : {std::pair{c.L, c.alpha}, std::pair{c.M, c.beta}}) {
    for (int x : g.line_points(l)) {
      if (!g.plane_contains(pl, x) || x == c.o) throw PreconditionError("line not in its plane off o", {l});
    }
  }
  for (int x : g.line_points(c.L)) {
    if (proj_point_on_line(g, x, c.M) < 0) throw PreconditionError("L and M not opposite", {c.L, c.M});
  }
  for (int p : {c.p, c.p_t}) {
    if (g.collinear(p, c.o)) throw PreconditionError("p not opposite o", {p});
    for (int l : {c.L, c.M}) {
      for (int x : g.line_points(l)) {
        if (!g.collinear(p, x)) throw PreconditionError("p not in the perp of L and M", {p, x});
      }
    }
  }

  Extension ext;
  ext.params = {{"kind", "second"}, {"alpha", c.alpha}, {"beta", c.beta}, {"o", c.o}, {"L", c.L},
                {"M", c.M}, {"p", c.p}, {"p_target", c.p_t}};
  auto mismatch = [&](std::vector<int> w) {
    ++ext.mismatches;
    if (ext.mismatch_witness.empty()) ext.mismatch_witness = std::move(w);
  };

  // Seed: GQ second-kind elation in x⊥ ∩ y⊥ read in Res(x).
  const int x = g.line_points(c.L).front();
  int y = -1;
  for (int z : bpts) {
    if (y < 0 && g.opposite(x, z)) y = z;
  }
  const GQView gq = gq_from_opposite(g, x, y);
  const int qg = proj_point_on_line(g, y, c.L);
  const int ng = proj_point_on_line(g, x, c.M);
  const int u = proj_point_on_line(g, y, g.line_of(x, c.p));
  const int u_t = proj_point_on_line(g, y, g.line_of(x, c.p_t));
  int jp = -1;
  for (int z : g.line_points(g.line_of(y, u))) {
    if (jp < 0 && z != y && z != u) jp = z;
  }
  const auto seed = build_second_kind_gq_elation(g, gq, c.o, qg, u, ng, u_t, jp);
  ext.params["seed"] = seed.recipe.to_json();

  std::vector<int> points;  // (α ∪ β) ∖ {o}
  std::vector<char> in_ab(n, 0);
  for (const auto* s : {&apts, &bpts}) {
    for (int z : *s) {
      in_ab[z] = 1;
      if (z != c.o) points.push_back(z);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::map<int, ResidueAction> eta;
  eta[x] = from_projectivity(seed.theta);
  for (bool changed = true; changed;) {
    changed = false;
    for (int z : points) {
      if (eta.count(z)) continue;
      for (int w : points) {
        auto it = eta.find(w);
        if (it != eta.end() && g.opposite(z, w)) {
          eta[z] = copy_residue(g, w, it->second, z);
          changed = true;
          break;
        }
      }
    }
  }
  for (int z : points) {
    if (!eta.count(z)) throw CoverageIncomplete("no residue elation copied to point", {z});
  }
  // Closure under copying.
  for (int a : points) {
    for (int b : points) {
      if (a < b && g.opposite(a, b)) {
        ++ext.comparisons;
        if (copy_residue(g, a, eta[a], b) != eta[b]) mismatch({a, b});
      }
    }
  }

  ext.perm.assign(n, -1);
  ext.provenance.assign(n, Provenance::Fixed);
  for (int w = 0; w < n; ++w) {
    if (in_ab[w]) {
      ext.perm[w] = w;
      continue;
    }
    const auto A = perp_in(g, apts, w), B = perp_in(g, bpts, w);
    if (g.opposite(w, c.o)) {
      ext.provenance[w] = Provenance::OppositeO;
      std::vector<int> wa = A, wb = B;
      wa.push_back(w);
      wb.push_back(w);
      const int pi = g.plane_spanned(wa), sigma = g.plane_spanned(wb);
      int img = -1;
      for (int a : A) {
        for (int b : B) {
          const auto meet =
              common_points(g, g.plane_points(plane_image(g, a, eta[a], pi)),
                            g.plane_set(plane_image(g, b, eta[b], sigma)));
          const int v = meet.size() == 1 ? meet[0] : -1;
          if (img < 0) img = v;
          ++ext.comparisons;
          if (v < 0 || v != img) mismatch({w, a, b});
        }
      }
      ext.perm[w] = img;
      continue;
    }
    std::vector<int> a_off, b_off;
    for (int a : A) {
      if (a != c.o) a_off.push_back(a);
    }
    for (int b : B) {
      if (b != c.o) b_off.push_back(b);
    }
    const bool coplanar = g.collinear(a_off.front(), b_off.front());
    if (coplanar) {
      ext.provenance[w] = Provenance::Coplanar;
      ext.perm[w] = w;
      for (int a : a_off) {
        ++ext.comparisons;
        if (line_image(g, a, eta[a], g.line_of(a, w)) != g.line_of(a, w)) mismatch({w, a});
      }
      continue;
    }
    ext.provenance[w] = Provenance::PerpO;
    std::vector<int> wa = A, wb = B;
    wa.push_back(w);
    wb.push_back(w);
    const int pa = g.plane_spanned(wa), pb = g.plane_spanned(wb);
    int img = -1;
    auto via = [&](int a, int plane) {
      const auto meet = common_points(g, g.line_points(line_image(g, a, eta[a], g.line_of(a, w))), g.plane_set(plane));
      const int v = meet.size() == 1 ? meet[0] : -1;
      if (img < 0) img = v;
      ++ext.comparisons;
      if (v < 0 || v != img) mismatch({w, a});
    };
    for (int a : a_off) via(a, pb);
    for (int b : b_off) via(b, pa);
    ext.perm[w] = img;
  }
  return ext;
}

FirstKindParams first_kind_params(const PolarSpace& g, const Root& r) {
  if (r.kind != RootKind::First) throw PreconditionError("root is not of the first kind");
  const auto& f = r.apartment.frame;
  FirstKindParams out{f.at(-r.i), f.at(-r.j), f.at(r.j), {}};
  out.targets = line_points_except(g, out.d, out.m, {out.d});
  return out;
}

SecondKindParams second_kind_params(const PolarSpace& g, const Root& r) {
  if (r.kind != RootKind::Second) throw PreconditionError("root is not of the second kind");
  const auto& f = r.apartment.frame;
  const int i = r.i > 0 ? r.i : -r.i;
  const int sgn = r.i > 0 ? 1 : -1;
  int j = 0, k = 0;
  for (int t = 1; t <= 3; ++t) {
    if (t == i) continue;
    (j ? k : j) = t;
  }
  // Signs follow the removed index: i > 0 keeps {-i, j, k} and {-i, -j, -k}.
  j *= sgn;
  k *= sgn;
  const int o = f.at(-r.i);
  std::vector<int> al{o, f.at(j), f.at(k)}, be{o, f.at(-j), f.at(-k)};
  SecondKindConfig c{g.plane_spanned(al), g.plane_spanned(be), o, g.line_of(f.at(j), f.at(k)),
                     g.line_of(f.at(-j), f.at(-k)), f.at(r.i), f.at(r.i)};
  SecondKindParams out{c, {}};
  std::vector<int> lm = g.line_points(c.L);
  lm.insert(lm.end(), g.line_points(c.M).begin(), g.line_points(c.M).end());
  for (int z : to_ids(g.perp(lm))) {
    if (g.opposite(z, o)) out.targets.push_back(z);
  }
  return out;
}

}  // namespace mforge
