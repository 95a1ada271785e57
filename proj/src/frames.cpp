#include "mforge/frames.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <optional>
#include <set>
#include <string>

#include "mforge/errors.hpp"

namespace mforge {

namespace {

constexpr std::array<int, 6> kSearchOrder = {1, -1, 2, -2, 3, -3};

bool masks_singular(unsigned mask) {
  for (int s = 0; s < 3; ++s) {
    if ((mask >> s & 1u) && (mask >> (s + 3) & 1u)) return false;
  }
  return true;
}

PointSet candidates(const PolarSpace& g, const PolarFrame& f, int index) {
  PointSet c = g.all_points();
  for (int s = 0; s < 6; ++s) {
    const int x = f.pts[s];
    if (x < 0) continue;
    const int other = slot_index(s);
    if (other + index == 0) {
      c -= g.perp(x);
    } else {
      c &= g.perp(x);
      c.reset(x);
    }
  }
  return c;
}

void check_constraints(const PolarSpace& g, const std::map<int, int>& constraints, PolarFrame& f) {
  for (auto [i, p] : constraints) {
    if (i == 0 || i < -3 || i > 3) throw NoFrame("frame index out of range: " + std::to_string(i));
    if (p < 0 || p >= g.num_points()) throw NoFrame("point id out of range", {p});
    f.at(i) = p;
  }
  for (auto [i, p] : constraints) {
    for (auto [k, r] : constraints) {
      if (i == k) continue;
      const bool want = i + k != 0;
      if (p == r || g.collinear(p, r) != want) throw NoFrame("constraints violate the frame relation", {i, k});
    }
  }
}

void search(const PolarSpace& g, PolarFrame& f, int depth, std::vector<PolarFrame>& out, std::size_t cap) {
  if (out.size() >= cap) return;
  if (depth == 6) {
    out.push_back(f);
    return;
  }
  const int index = kSearchOrder[depth];
  if (f.at(index) >= 0) {
    search(g, f, depth + 1, out, cap);
    return;
  }
  PointSet c = candidates(g, f, index);
  for (auto x = c.find_first(); x != PointSet::npos && out.size() < cap; x = c.find_next(x)) {
    f.at(index) = static_cast<int>(x);
    search(g, f, depth + 1, out, cap);
  }
  f.at(index) = -1;
}

}  // namespace

bool frame_valid(const PolarSpace& g, const PolarFrame& f) {
  for (int s = 0; s < 6; ++s) {
    for (int t = 0; t < 6; ++t) {
      if (s == t) continue;
      if (f.pts[s] < 0 || f.pts[s] == f.pts[t]) return false;
      const bool want = slot_index(s) + slot_index(t) != 0;
      if (g.collinear(f.pts[s], f.pts[t]) != want) return false;
    }
  }
  return true;
}

PolarFrame frame_search(const PolarSpace& g, const std::map<int, int>& constraints) {
  auto all = enumerate_frames(g, constraints, 1);
  if (all.empty()) throw NoFrame("no frame completes the constraints");
  return all.front();
}

std::vector<PolarFrame> enumerate_frames(const PolarSpace& g, const std::map<int, int>& constraints, std::size_t cap) {
  PolarFrame f;
  check_constraints(g, constraints, f);
  std::vector<PolarFrame> out;
  search(g, f, 0, out, cap);
  return out;
}

std::vector<Element> Apartment::element_set() const {
  std::vector<Element> out;
  for (const auto& e : elements) out.push_back(e.elem);
  std::sort(out.begin(), out.end());
  return out;
}

bool Apartment::contains(Element e) const {
  for (const auto& x : elements) {
    if (x.elem == e) return true;
  }
  return false;
}

Element Apartment::element_of(unsigned mask) const {
  for (const auto& x : elements) {
    if (x.mask == mask) return x.elem;
  }
  return {};
}

Apartment apartment_from_frame(const PolarSpace& g, const PolarFrame& f) {
  Apartment a;
  a.frame = f;
  for (unsigned mask = 1; mask < 64; ++mask) {
    if (!masks_singular(mask)) continue;
    std::vector<int> pts;
    for (int s = 0; s < 6; ++s) {
      if (mask >> s & 1u) pts.push_back(f.pts[s]);
    }
    Element e;
    e.dim = static_cast<int>(pts.size()) - 1;
    if (e.dim == 0) {
      e.id = pts[0];
    } else if (e.dim == 1) {
      e.id = g.line_of(pts[0], pts[1]);
    } else {
      e.id = g.plane_of(g.line_of(pts[0], pts[1]), pts[2]);
    }
    if (e.id < 0) throw PreconditionError("frame subset does not span a singular subspace");
    a.elements.push_back({mask, e});
  }
  std::sort(a.elements.begin(), a.elements.end(), [](const auto& x, const auto& y) {
    return std::popcount(x.mask) != std::popcount(y.mask) ? std::popcount(x.mask) < std::popcount(y.mask)
                                                          : x.mask < y.mask;
  });
  return a;
}

bool Root::in_members(unsigned mask) const {
  return std::find(member_masks.begin(), member_masks.end(), mask) != member_masks.end();
}

Root root_of_apartment(const Apartment& a, RootKind kind, int i, int j) {
  auto valid = [](int k) { return k != 0 && k >= -3 && k <= 3; };
  if (!valid(i)) throw BadIndices("index out of range", {i});
  Root r;
  r.kind = kind;
  r.i = i;
  r.j = j;
  r.apartment = a;
  const unsigned bi = index_bit(i);
  std::vector<unsigned> removed;
  if (kind == RootKind::First) {
    if (!valid(j) || i == j || i + j == 0) throw BadIndices("p_i and p_j must be distinct collinear frame points", {i, j});
    const unsigned bj = index_bit(j);
    // Removed planes contain both p_i and p_j; removed smaller subspaces lie
    // in such a plane and contain p_i or p_j.
    for (const auto& e : a.elements) {
      const unsigned m = e.mask;
      const bool has = (m & (bi | bj)) != 0;
      if (!has) continue;
      bool in_removed_plane = false;
      for (const auto& f : a.elements) {
        if (std::popcount(f.mask) == 3 && (f.mask & bi) && (f.mask & bj) && (m & ~f.mask) == 0) in_removed_plane = true;
      }
      if (in_removed_plane) removed.push_back(m);
    }
    for (const auto& e : a.elements) {
      if (std::find(removed.begin(), removed.end(), e.mask) != removed.end()) continue;
      r.member_masks.push_back(e.mask);
      const bool extra = std::popcount(e.mask) == 3 && (e.mask & (bi | bj)) != 0;
      if (!extra) r.inside_masks.push_back(e.mask);
    }
  } else {
    for (const auto& e : a.elements) {
      if (e.mask & bi) continue;
      r.member_masks.push_back(e.mask);
      bool in_removed_plane = false;
      if (std::popcount(e.mask) == 2) {
        for (const auto& f : a.elements) {
          if (std::popcount(f.mask) == 3 && (f.mask & bi) && (e.mask & ~f.mask) == 0) in_removed_plane = true;
        }
      }
      if (!in_removed_plane) r.inside_masks.push_back(e.mask);
    }
  }
  for (unsigned m : r.member_masks) r.members.push_back(a.element_of(m));
  for (unsigned m : r.inside_masks) r.inside.push_back(a.element_of(m));
  std::sort(r.members.begin(), r.members.end());
  std::sort(r.inside.begin(), r.inside.end());
  return r;
}

std::vector<Apartment> apartments_containing(const PolarSpace& g, const Root& r) {
  std::map<int, int> fixed;
  for (unsigned m : r.member_masks) {
    if (std::popcount(m) == 1) {
      const int s = std::countr_zero(m);
      fixed[slot_index(s)] = r.apartment.frame.pts[s];
    }
  }
  std::vector<Apartment> out;
  for (const auto& f : enumerate_frames(g, fixed)) {
    Apartment a = apartment_from_frame(g, f);
    bool ok = true;
    for (const auto& e : r.members) ok = ok && a.contains(e);
    if (ok) out.push_back(std::move(a));
  }
  return out;
}

Apartment common_apartment(const PolarSpace& g, const SingularSubspace& U, const SingularSubspace& V) {
  PointSet pref(g.num_points());
  for (int x : U.points) pref.set(x);
  for (int x : V.points) pref.set(x);
  PolarFrame f;
  std::optional<Apartment> found;
  auto contains_both = [&](const Apartment& a) {
    auto has = [&](const SingularSubspace& S) {
      if (S.dim < 0) return true;
      if (S.dim == 0) return a.contains({0, S.points[0]});
      if (S.dim == 1) return a.contains({1, g.line_id(S.points)});
      return a.contains({2, g.plane_id(S.points)});
    };
    return has(U) && has(V);
  };
  auto count_in = [&](const SingularSubspace& S) {
    int c = 0;
    for (int x : f.pts) {
      if (x >= 0 && std::binary_search(S.points.begin(), S.points.end(), x)) ++c;
    }
    return c;
  };
  std::function<void(int)> rec = [&](int depth) {
    if (found) return;
    const int left = 6 - depth;
    if (left < (U.dim + 1 - count_in(U)) || left < (V.dim + 1 - count_in(V))) return;
    if (depth == 6) {
      Apartment a = apartment_from_frame(g, f);
      if (contains_both(a)) found = std::move(a);
      return;
    }
    const int index = kSearchOrder[depth];
    PointSet c = candidates(g, f, index);
    PointSet first = c & pref;
    for (const PointSet* set : {&first, &c}) {
      for (auto x = set->find_first(); x != PointSet::npos && !found; x = set->find_next(x)) {
        if (set == &c && pref[x]) continue;
        f.at(index) = static_cast<int>(x);
        rec(depth + 1);
      }
    }
    f.at(index) = -1;
  };
  rec(0);
  if (!found) throw NoFrame("no apartment contains both subspaces");
  return *found;
}

std::array<int, 4> GQApartment::sorted_points() const {
  auto s = cycle;
  std::sort(s.begin(), s.end());
  return s;
}

GQApartment canonical_gq_apartment(const PointLineGeometry& gq, std::array<int, 4> c) {
  auto it = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), it, c.end());
  if (c[1] > c[3]) std::swap(c[1], c[3]);
  GQApartment a;
  a.cycle = c;
  for (int k = 0; k < 4; ++k) a.lines[k] = gq.line_of(c[k], c[(k + 1) % 4]);
  return a;
}

std::vector<GQApartment> gq_apartments(const PointLineGeometry& gq) {
  std::set<std::array<int, 4>> seen;
  std::vector<GQApartment> out;
  const int n = gq.num_points;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (gq.collinear[x][y]) continue;
      std::vector<int> common = to_ids(gq.collinear[x] & gq.collinear[y]);
      for (std::size_t a = 0; a < common.size(); ++a) {
        for (std::size_t b = a + 1; b < common.size(); ++b) {
          if (gq.collinear[common[a]][common[b]]) continue;
          GQApartment ap = canonical_gq_apartment(gq, {x, common[a], y, common[b]});
          if (seen.insert(ap.cycle).second) out.push_back(ap);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.cycle < b.cycle; });
  return out;
}

std::vector<GQRoot> roots_of_gq_apartment(const GQApartment& a) {
  std::vector<GQRoot> out;
  auto canon = [](GQRoot r) {
    std::array<int, 5> rev{r.path[4], r.path[3], r.path[2], r.path[1], r.path[0]};
    if (rev < r.path) r.path = rev;
    return r;
  };
  for (int k = 0; k < 4; ++k) {
    const int prev = (k + 3) % 4, next = (k + 1) % 4;
    // Centre line lines[k] joining cycle[k] and cycle[k+1].
    out.push_back(canon({GQRootKind::First, {a.lines[prev], a.cycle[k], a.lines[k], a.cycle[next], a.lines[next]}}));
    // Centre point cycle[k].
    out.push_back(canon({GQRootKind::Second, {a.cycle[prev], a.lines[prev], a.cycle[k], a.lines[k], a.cycle[next]}}));
  }
  return out;
}

std::vector<GQRoot> gq_roots(const std::vector<GQApartment>& apartments, const PointLineGeometry&) {
  std::set<GQRoot> all;
  for (const auto& a : apartments) {
    for (const auto& r : roots_of_gq_apartment(a)) all.insert(r);
  }
  return {all.begin(), all.end()};
}

bool gq_apartment_contains(const GQApartment& a, const GQRoot& r) {
  auto has_point = [&](int x) { return std::find(a.cycle.begin(), a.cycle.end(), x) != a.cycle.end(); };
  auto has_line = [&](int l) { return std::find(a.lines.begin(), a.lines.end(), l) != a.lines.end(); };
  for (int k = 0; k < 5; ++k) {
    const bool is_line = (r.kind == GQRootKind::First) == (k % 2 == 0);
    if (is_line ? !has_line(r.path[k]) : !has_point(r.path[k])) return false;
  }
  return true;
}

std::vector<int> gq_apartments_containing(const std::vector<GQApartment>& apartments, const GQRoot& r) {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(apartments.size()); ++k) {
    if (gq_apartment_contains(apartments[k], r)) out.push_back(k);
  }
  return out;
}

GQApartment gq_apartment_image(const PointLineGeometry& gq, const GQApartment& a, const std::vector<int>& perm) {
  std::array<int, 4> c;
  for (int k = 0; k < 4; ++k) c[k] = perm[a.cycle[k]];
  for (int k = 0; k < 4; ++k) {
    if (!gq.collinear[c[k]][c[(k + 1) % 4]] || gq.collinear[c[k]][c[(k + 2) % 4]]) {
      GQApartment bad;
      bad.cycle = {-1, -1, -1, -1};
      bad.lines = {-1, -1, -1, -1};
      return bad;
    }
  }
  return canonical_gq_apartment(gq, c);
}

}  // namespace mforge
