#include "mforge/polar_space.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "mforge/errors.hpp"

namespace mforge {

std::vector<int> to_ids(const PointSet& s) {
  std::vector<int> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out.push_back(static_cast<int>(i));
  return out;
}

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Projective points of the span of `gens`, as ids via the code table. Returns
// false if some nonzero vector of the span is not a point.
bool span_ids(const PrimeField& f, int dim, const std::vector<int>& code_to_id, std::vector<Vec> gens,
              std::vector<int>& out) {
  const int rank = f.row_reduce(gens, dim);
  gens.resize(rank);
  out.clear();
  const int q = f.order();
  const int total = ipow(q, rank);
  for (int code = 1; code < total; ++code) {
    Vec v{};
    int c = code;
    for (int i = 0; i < rank; ++i) {
      v = f.axpy(static_cast<std::uint8_t>(c % q), gens[i], v, dim);
      c /= q;
    }
    f.normalize(v, dim);
    const int id = code_to_id[f.encode(v, dim)];
    if (id < 0) return false;
    out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return true;
}

std::vector<int> make_code_table(const PrimeField& f, int dim, const std::vector<Vec>& points) {
  std::vector<int> table(ipow(f.order(), dim), -1);
  for (int i = 0; i < static_cast<int>(points.size()); ++i) table[f.encode(points[i], dim)] = i;
  return table;
}

}  // namespace

PolarSpace::PolarSpace(Parts parts) : parts_(std::move(parts)), form_(parts_.form) {
  const int n = num_points();
  const int d = dim();
  for (auto& p : parts_.points) {
    Vec v = p;
    if (!field().normalize(v, d) || v != p) throw PreconditionError("point vector is not normalized");
  }
  code_to_id_ = make_code_table(field(), d, parts_.points);
  if (static_cast<int>(parts_.adjacency.size()) != n) throw PreconditionError("adjacency table has wrong size");
  for (const auto& row : parts_.adjacency) {
    if (static_cast<int>(row.size()) != n) throw PreconditionError("adjacency row has wrong size");
  }

  auto check_ids = [n](const std::vector<int>& ids) {
    for (int x : ids) {
      if (x < 0 || x >= n) throw PreconditionError("point id out of range: " + std::to_string(x));
    }
    if (!std::is_sorted(ids.begin(), ids.end())) throw PreconditionError("element point tuple not sorted");
  };

  neighbor_line_.assign(n, {});
  lines_through_.assign(n, {});
  for (int l = 0; l < num_lines(); ++l) {
    const auto& pts = parts_.lines[l];
    check_ids(pts);
    for (int a : pts) {
      lines_through_[a].push_back(l);
      for (int b : pts) {
        if (a != b) neighbor_line_[a].emplace_back(b, l);
      }
    }
  }
  for (auto& v : neighbor_line_) std::sort(v.begin(), v.end());

  planes_through_point_.assign(n, {});
  planes_on_line_.assign(num_lines(), {});
  plane_lines_.assign(num_planes(), {});
  plane_sets_.assign(num_planes(), PointSet(n));
  for (int pi = 0; pi < num_planes(); ++pi) {
    const auto& pts = parts_.planes[pi];
    check_ids(pts);
    plane_index_[pts] = pi;
    std::set<int> lines;
    for (int a : pts) {
      plane_sets_[pi].set(a);
      planes_through_point_[a].push_back(pi);
      for (int b : pts) {
        if (a < b) {
          const int l = line_of(a, b);
          if (l >= 0) lines.insert(l);
        }
      }
    }
    plane_lines_[pi].assign(lines.begin(), lines.end());
    for (int l : lines) {
      // A line lies on the plane only when all its points do.
      bool inside = true;
      for (int x : parts_.lines[l]) inside = inside && plane_sets_[pi][x];
      if (inside) planes_on_line_[l].push_back(pi);
    }
  }
  for (auto& v : planes_on_line_) std::sort(v.begin(), v.end());
}

int PolarSpace::point_id(const Vec& v) const {
  Vec w = v;
  if (!field().normalize(w, dim())) return -1;
  return code_to_id_[field().encode(w, dim())];
}

PointSet PolarSpace::perp(std::span<const int> pts) const {
  PointSet s = all_points();
  for (int p : pts) s &= parts_.adjacency[p];
  return s;
}

PointSet PolarSpace::all_points() const {
  PointSet s(num_points());
  s.set();
  return s;
}

const std::vector<int>& PolarSpace::element_points(Element e) const {
  static const std::vector<int> kEmpty;
  switch (e.dim) {
    case 1:
      return parts_.lines[e.id];
    case 2:
      return parts_.planes[e.id];
    default:
      break;
  }
  // Points are their own singleton; callers use element_points on lines/planes.
  thread_local std::vector<int> single(1);
  if (e.dim == 0) {
    single[0] = e.id;
    return single;
  }
  return kEmpty;
}

bool PolarSpace::line_contains(int l, int p) const {
  const auto& pts = parts_.lines[l];
  return std::binary_search(pts.begin(), pts.end(), p);
}

int PolarSpace::line_of(int a, int b) const {
  if (a == b) return -1;
  const auto& v = neighbor_line_[a];
  auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(b, -1));
  if (it == v.end() || it->first != b) return -1;
  return it->second;
}

int PolarSpace::plane_of(int l, int c) const {
  for (int pi : planes_on_line_[l]) {
    if (plane_sets_[pi][c]) return pi;
  }
  return -1;
}

int PolarSpace::plane_spanned(std::span<const int> pts) const {
  if (span_dim(pts) != 2) return -1;
  for (int a : pts) {
    for (int b : pts) {
      if (!collinear(a, b)) return -1;
    }
  }
  std::vector<int> ids;
  std::vector<Vec> gens;
  for (int p : pts) gens.push_back(vec(p));
  if (!span_ids(field(), dim(), code_to_id_, gens, ids)) return -1;
  return plane_id(ids);
}

int PolarSpace::line_id(const std::vector<int>& sorted_pts) const {
  if (sorted_pts.size() < 2) return -1;
  const int l = line_of(sorted_pts[0], sorted_pts[1]);
  if (l < 0 || parts_.lines[l] != sorted_pts) return -1;
  return l;
}

int PolarSpace::plane_id(const std::vector<int>& sorted_pts) const {
  auto it = plane_index_.find(sorted_pts);
  return it == plane_index_.end() ? -1 : it->second;
}

std::vector<int> PolarSpace::span(std::span<const int> pts) const {
  std::vector<Vec> gens;
  for (int p : pts) gens.push_back(vec(p));
  std::vector<int> ids;
  if (!span_ids(field(), dim(), code_to_id_, gens, ids)) {
    throw PreconditionError("span contains non-singular vectors");
  }
  return ids;
}

int PolarSpace::span_dim(std::span<const int> pts) const {
  std::vector<Vec> gens;
  for (int p : pts) gens.push_back(vec(p));
  return field().row_reduce(gens, dim()) - 1;
}

PolarSpace build_polar_space(const FormSpec& spec) {
  const Form form(spec);  // throws DegenerateForm
  const PrimeField& f = form.field();
  const int d = spec.dim();
  const int q = spec.q;

  PolarSpace::Parts parts;
  parts.form = spec;
  const int total = ipow(q, d);
  for (int code = 1; code < total; ++code) {
    Vec v = f.decode(static_cast<std::uint32_t>(code), d);
    Vec w = v;
    f.normalize(w, d);
    if (w != v) continue;
    if (form.is_singular(v)) parts.points.push_back(v);
  }
  const int n = static_cast<int>(parts.points.size());
  const auto code_to_id = make_code_table(f, d, parts.points);

  parts.adjacency.assign(n, PointSet(n));
  for (int a = 0; a < n; ++a) {
    parts.adjacency[a].set(a);
    for (int b = a + 1; b < n; ++b) {
      if (form.bilinear(parts.points[a], parts.points[b]) == 0) {
        parts.adjacency[a].set(b);
        parts.adjacency[b].set(a);
      }
    }
  }

  // Lines: first uncovered collinear pair (a, b) with a < b spans a new line.
  std::vector<std::vector<int>> covered(n);  // sorted neighbours already on a line with a
  std::vector<int> ids;
  for (int a = 0; a < n; ++a) {
    std::vector<char> seen(n, 0);
    for (int b : covered[a]) seen[b] = 1;
    for (int b = a + 1; b < n; ++b) {
      if (!parts.adjacency[a][b] || seen[b]) continue;
      span_ids(f, d, code_to_id, {parts.points[a], parts.points[b]}, ids);
      parts.lines.push_back(ids);
      for (int x : ids) {
        if (x == a) continue;
        seen[x] = 1;
        for (int y : ids) {
          if (y != x && y > a) covered[x].push_back(y);
        }
      }
    }
    covered[a].clear();
    covered[a].shrink_to_fit();
  }
  std::sort(parts.lines.begin(), parts.lines.end());

  // Planes: for each line, extend by points of its perp not yet on a known plane through it.
  std::set<std::vector<int>> planes;
  for (const auto& line : parts.lines) {
    PointSet lp(n);
    lp.set();
    for (int x : line) lp &= parts.adjacency[x];
    for (int x : line) lp.reset(x);
    std::vector<PointSet> found;
    for (auto c = lp.find_first(); c != PointSet::npos; c = lp.find_next(c)) {
      bool known = false;
      for (const auto& s : found) known = known || s[c];
      if (known) continue;
      span_ids(f, d, code_to_id, {parts.points[line[0]], parts.points[line[1]], parts.points[c]}, ids);
      PointSet s(n);
      for (int x : ids) s.set(x);
      found.push_back(s);
      planes.insert(ids);
    }
  }
  parts.planes.assign(planes.begin(), planes.end());
  return PolarSpace(std::move(parts));
}

}  // namespace mforge
