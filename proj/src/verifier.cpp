#include "mforge/verifier.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "mforge/errors.hpp"

namespace mforge {

Element image_element(const PolarSpace& g, const Perm& sigma, Element e) {
  if (e.dim == 0) return {0, sigma[e.id]};
  std::vector<int> pts;
  for (int x : g.element_points(e)) pts.push_back(sigma[x]);
  std::sort(pts.begin(), pts.end());
  return {e.dim, e.dim == 1 ? g.line_id(pts) : g.plane_id(pts)};
}

Collineation check_collineation(const PolarSpace& g, const Perm& sigma) {
  Collineation c;
  c.perm = sigma;
  if (static_cast<int>(sigma.size()) != g.num_points() || !is_bijection(sigma)) {
    c.witness = {static_cast<int>(sigma.size())};
    return c;
  }
  c.bijective = true;
  for (int l = 0; l < g.num_lines(); ++l) {
    if (image_element(g, sigma, {1, l}).id < 0) {
      c.witness = {l};
      return c;
    }
  }
  c.line_preserving = true;
  for (int pi = 0; pi < g.num_planes(); ++pi) {
    if (image_element(g, sigma, {2, pi}).id < 0) {
      c.witness = {pi};
      return c;
    }
  }
  c.plane_preserving = true;
  return c;
}

namespace {

bool stabilized(const PolarSpace& g, const Perm& sigma, Element e) { return image_element(g, sigma, e) == e; }

// Elements of Δ of dimension `dim` completing a two-element flag to a chamber.
std::vector<Element> completions(const PolarSpace& g, Element a, Element b) {
  std::vector<Element> out;
  if (a.dim > b.dim) std::swap(a, b);
  if (a.dim == 0 && b.dim == 1) {
    for (int pi : g.planes_on_line(b.id)) out.push_back({2, pi});
  } else if (a.dim == 0 && b.dim == 2) {
    for (int l : g.lines_through(a.id)) {
      bool inside = true;
      for (int x : g.line_points(l)) inside = inside && g.plane_contains(b.id, x);
      if (inside) out.push_back({1, l});
    }
  } else {
    for (int x : g.line_points(b.dim == 1 ? b.id : a.id)) out.push_back({0, x});
  }
  return out;
}

}  // namespace

CertifyResult certify_root_elation(const PolarSpace& g, const Perm& sigma, const Root& r,
                                   const std::vector<Apartment>* containing) {
  CertifyResult res;
  for (const auto& e : r.inside) {
    ++res.elements_checked;
    if (!stabilized(g, sigma, e)) {
      res.failure = "inside element moved";
      res.witness = {e.dim, e.id};
      return res;
    }
  }

  // Chambers of the root: point < line < plane with all three masks in the root.
  struct Chamber {
    unsigned v, l, f;
  };
  std::vector<Chamber> chambers;
  for (unsigned f : r.member_masks) {
    if (std::popcount(f) != 3) continue;
    for (unsigned l : r.member_masks) {
      if (std::popcount(l) != 2 || (l & ~f)) continue;
      for (unsigned v : r.member_masks) {
        if (std::popcount(v) == 1 && !(v & ~l)) chambers.push_back({v, l, f});
      }
    }
  }
  std::set<std::pair<unsigned, unsigned>> seen;
  auto panel_count = [&](unsigned a, unsigned b) {
    int c = 0;
    for (const auto& ch : chambers) {
      const bool has_a = a == ch.v || a == ch.l || a == ch.f;
      const bool has_b = b == ch.v || b == ch.l || b == ch.f;
      c += has_a && has_b ? 1 : 0;
    }
    return c;
  };
  for (const auto& ch : chambers) {
    for (auto [a, b] : {std::pair{ch.v, ch.l}, std::pair{ch.v, ch.f}, std::pair{ch.l, ch.f}}) {
      if (!seen.insert({a, b}).second || panel_count(a, b) < 2) continue;
      for (const auto& e : completions(g, r.apartment.element_of(a), r.apartment.element_of(b))) {
        ++res.elements_checked;
        if (!stabilized(g, sigma, e)) {
          res.failure = "element on an interior panel not stabilized";
          res.witness = {e.dim, e.id};
          return res;
        }
      }
    }
  }

  std::vector<Apartment> local;
  if (!containing) {
    local = apartments_containing(g, r);
    containing = &local;
  }
  for (const auto& a : *containing) {
    ++res.apartments_checked;
    PolarFrame f;
    for (int s = 0; s < 6; ++s) f.pts[s] = sigma[a.frame.pts[s]];
    if (!frame_valid(g, f)) {
      res.failure = "apartment image is not an apartment";
      res.witness = std::vector<int>(a.frame.pts.begin(), a.frame.pts.end());
      return res;
    }
    Apartment img = apartment_from_frame(g, f);
    for (const auto& e : r.members) {
      if (!img.contains(e)) {
        res.failure = "apartment image does not contain the root";
        res.witness = {e.dim, e.id};
        return res;
      }
    }
  }
  res.pass = true;
  return res;
}

bool gq_is_collineation(const PointLineGeometry& gq, const Perm& sigma, std::vector<int>* witness) {
  if (static_cast<int>(sigma.size()) != gq.num_points || !is_bijection(sigma)) {
    if (witness) *witness = {-1};
    return false;
  }
  for (int a = 0; a < gq.num_points; ++a) {
    for (int b = a + 1; b < gq.num_points; ++b) {
      if (gq.collinear[a][b] != gq.collinear[sigma[a]][sigma[b]]) {
        if (witness) *witness = {a, b};
        return false;
      }
    }
  }
  return true;
}

namespace {

int gq_line_image(const PointLineGeometry& gq, const Perm& sigma, int l) {
  return gq.line_of(sigma[gq.lines[l][0]], sigma[gq.lines[l][1]]);
}

}  // namespace

CertifyResult certify_gq_root_elation(const PointLineGeometry& gq, const std::vector<GQApartment>& apartments,
                                      const Perm& sigma, const GQRoot& r) {
  CertifyResult res;
  std::vector<int> w;
  if (!gq_is_collineation(gq, sigma, &w)) {
    res.failure = "not a collineation";
    res.witness = w;
    return res;
  }
  auto is_line = [&](int k) { return (r.kind == GQRootKind::First) == (k % 2 == 0); };
  // Interior elements are path[1..3]; each is an interior panel whose
  // completions are the elements of the other type incident with it.
  for (int k = 1; k <= 3; ++k) {
    const int e = r.path[k];
    ++res.elements_checked;
    if (is_line(k)) {
      if (gq_line_image(gq, sigma, e) != e) {
        res.failure = "interior line moved";
        res.witness = {1, e};
        return res;
      }
      for (int x : gq.lines[e]) {
        ++res.elements_checked;
        if (sigma[x] != x) {
          res.failure = "point on an interior line moved";
          res.witness = {0, x};
          return res;
        }
      }
    } else {
      if (sigma[e] != e) {
        res.failure = "interior point moved";
        res.witness = {0, e};
        return res;
      }
      for (int l : gq.point_lines[e]) {
        ++res.elements_checked;
        if (gq_line_image(gq, sigma, l) != l) {
          res.failure = "line through an interior point moved";
          res.witness = {1, l};
          return res;
        }
      }
    }
  }
  for (int idx : gq_apartments_containing(apartments, r)) {
    ++res.apartments_checked;
    GQApartment img = gq_apartment_image(gq, apartments[idx], sigma);
    if (img.cycle[0] < 0 || !gq_apartment_contains(img, r)) {
      res.failure = "apartment image does not contain the root";
      res.witness = std::vector<int>(apartments[idx].cycle.begin(), apartments[idx].cycle.end());
      return res;
    }
  }
  res.pass = true;
  return res;
}

TransitivityResult gq_moufang_transitivity(const PointLineGeometry& gq, const std::vector<GQApartment>& apartments,
                                           const GQRoot& r, const std::vector<Perm>& elations, std::size_t cap) {
  TransitivityResult res;
  auto idx = gq_apartments_containing(apartments, r);
  res.apartments = static_cast<int>(idx.size());
  auto group = group_closure(elations, gq.num_points, cap);
  res.group_order = group.size();
  if (idx.empty()) {
    res.failure = "no apartment contains the root";
    return res;
  }
  std::set<std::array<int, 4>> orbit;
  for (const auto& s : group) {
    GQApartment img = gq_apartment_image(gq, apartments[idx[0]], s);
    orbit.insert(img.cycle);
  }
  res.orbit_size = static_cast<int>(orbit.size());
  std::set<std::array<int, 4>> target;
  for (int k : idx) target.insert(apartments[k].cycle);
  res.pass = orbit == target;
  if (!res.pass) res.failure = "orbit differs from the apartments containing the root";
  return res;
}

TransitivityResult moufang_transitivity(const PolarSpace& g, const Root& r, const std::vector<Perm>& elations,
                                        std::size_t cap) {
  TransitivityResult res;
  auto aps = apartments_containing(g, r);
  res.apartments = static_cast<int>(aps.size());
  auto group = group_closure(elations, g.num_points(), cap);
  res.group_order = group.size();
  auto key = [](const PolarFrame& f) {
    std::array<int, 6> k = f.pts;
    std::sort(k.begin(), k.end());
    return k;
  };
  std::set<std::array<int, 6>> orbit, target;
  for (const auto& a : aps) target.insert(key(a.frame));
  for (const auto& s : group) {
    PolarFrame f;
    for (int k = 0; k < 6; ++k) f.pts[k] = s[r.apartment.frame.pts[k]];
    orbit.insert(key(f));
  }
  res.orbit_size = static_cast<int>(orbit.size());
  res.pass = !target.empty() && orbit == target;
  if (!res.pass) res.failure = "orbit differs from the apartments containing the root";
  return res;
}

FixpointResult verify_fixpoint_corollary(const PolarSpace& g, const Perm& sigma, const Root& r) {
  FixpointResult res;
  auto check_lines_through = [&](int x) {
    for (int l : g.lines_through(x)) {
      ++res.lines_checked;
      if (!stabilized(g, sigma, {1, l})) {
        res.failure = "line through a distinguished point moved";
        res.witness = {x, l};
        return false;
      }
    }
    return true;
  };
  if (r.kind == RootKind::First) {
    const int d = r.apartment.frame.at(-r.i), q = r.apartment.frame.at(-r.j);
    const int dq = g.line_of(d, q);
    for (int pi : g.planes_on_line(dq)) {
      ++res.planes_checked;
      for (int x : g.plane_points(pi)) {
        if (sigma[x] != x) {
          res.failure = "plane through the fixed line not fixed pointwise";
          res.witness = {pi, x};
          return res;
        }
      }
    }
    if (!check_lines_through(d) || !check_lines_through(q)) return res;
  } else {
    if (!check_lines_through(r.apartment.frame.at(-r.i))) return res;
  }
  res.pass = true;
  return res;
}

SelfProjectivityResult verify_self_projectivity(const PolarSpace& g, const std::vector<int>& bases) {
  SelfProjectivityResult res;
  const int s = static_cast<int>(bases.size()) - 1;
  if (s != 4) {
    res.failure = "length " + std::to_string(s) + " != 4";
  } else if (bases.front() != bases.back()) {
    res.failure = "chain is not closed";
  } else {
    for (int k = 1; k <= s; ++k) {
      if (g.collinear(bases[k - 1], bases[k])) {
        res.failure = "consecutive bases " + std::to_string(k - 1) + "," + std::to_string(k) + " not opposite";
        return res;
      }
    }
    res.pass = true;
  }
  if (res.pass && s % 2 != 0) {
    res.pass = false;
    res.failure = "odd chain";
  }
  return res;
}

}  // namespace mforge
