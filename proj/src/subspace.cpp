#include "mforge/subspace.hpp"

#include <algorithm>

#include "mforge/errors.hpp"

namespace mforge {

namespace {

int dim_of_size(int size, int q) {
  if (size == 0) return -1;
  if (size == 1) return 0;
  if (size == q + 1) return 1;
  if (size == q * q + q + 1) return 2;
  return 3;
}

}  // namespace

SingularSubspace make_subspace(const PolarSpace& g, std::span<const int> pts) {
  for (int a : pts) {
    for (int b : pts) {
      if (!g.collinear(a, b)) throw PreconditionError("points are not pairwise collinear", {a, b});
    }
  }
  SingularSubspace s;
  if (pts.empty()) return s;
  s.points = g.span(pts);
  s.dim = dim_of_size(static_cast<int>(s.points.size()), g.q());
  return s;
}

SingularSubspace proj_subspace(const PolarSpace& g, const SingularSubspace& U, const SingularSubspace& V) {
  PointSet vp = g.perp(V.points);
  SingularSubspace s;
  for (int u : U.points) {
    if (vp[u]) s.points.push_back(u);
  }
  s.dim = dim_of_size(static_cast<int>(s.points.size()), g.q());
  return s;
}

bool subspaces_opposite(const PolarSpace& g, const SingularSubspace& U, const SingularSubspace& V) {
  return proj_subspace(g, U, V).empty() && proj_subspace(g, V, U).empty();
}

int proj_point_on_line(const PolarSpace& g, int x, int l) {
  int hit = -1;
  int count = 0;
  for (int y : g.line_points(l)) {
    if (g.collinear(x, y)) {
      hit = y;
      ++count;
    }
  }
  return count == 1 ? hit : -1;
}

void PointLineGeometry::index() {
  point_lines.assign(num_points, {});
  collinear.assign(num_points, PointSet(num_points));
  for (int x = 0; x < num_points; ++x) collinear[x].set(x);
  for (int l = 0; l < static_cast<int>(lines.size()); ++l) {
    for (int a : lines[l]) {
      point_lines[a].push_back(l);
      for (int b : lines[l]) collinear[a].set(b);
    }
  }
}

int PointLineGeometry::line_of(int a, int b) const {
  if (a == b) return -1;
  for (int l : point_lines[a]) {
    if (line_contains(l, b)) return l;
  }
  return -1;
}

bool PointLineGeometry::line_contains(int l, int x) const {
  return std::binary_search(lines[l].begin(), lines[l].end(), x);
}

int PointLineGeometry::proj_on_line(int x, int l) const {
  int hit = -1, count = 0;
  for (int y : lines[l]) {
    if (collinear[x][y]) {
      hit = y;
      ++count;
    }
  }
  return count == 1 ? hit : -1;
}

std::string PointLineGeometry::gq_violation() const {
  for (int a = 0; a < num_points; ++a) {
    for (int b = a + 1; b < num_points; ++b) {
      int shared = 0;
      for (int l : point_lines[a]) shared += line_contains(l, b) ? 1 : 0;
      if (shared > 1) return "points " + std::to_string(a) + "," + std::to_string(b) + " share two lines";
    }
  }
  for (int x = 0; x < num_points; ++x) {
    for (int l = 0; l < static_cast<int>(lines.size()); ++l) {
      if (line_contains(l, x)) continue;
      int hits = 0;
      for (int y : lines[l]) hits += collinear[x][y] ? 1 : 0;
      if (hits != 1) {
        return "point " + std::to_string(x) + " sees " + std::to_string(hits) + " points of line " +
               std::to_string(l);
      }
    }
  }
  return {};
}

PointResidue residue(const PolarSpace& g, const SingularSubspace& U) {
  if (U.dim != 0) throw BadDimension("residues are materialized for points only, got dim " + std::to_string(U.dim));
  PointResidue r;
  r.center = U.points.front();
  r.line_ids = g.lines_through(r.center);
  r.plane_ids = g.planes_through(r.center);
  r.geom.num_points = static_cast<int>(r.line_ids.size());
  for (int pi : r.plane_ids) {
    std::vector<int> local;
    for (int k = 0; k < r.geom.num_points; ++k) {
      const int l = r.line_ids[k];
      bool inside = true;
      for (int x : g.line_points(l)) inside = inside && g.plane_contains(pi, x);
      if (inside) local.push_back(k);
    }
    r.geom.lines.push_back(std::move(local));
  }
  r.geom.index();
  return r;
}

int GQView::local_line(int global_line) const {
  auto it = std::lower_bound(line_ids.begin(), line_ids.end(), global_line);
  if (it == line_ids.end() || *it != global_line) return -1;
  return static_cast<int>(it - line_ids.begin());
}

GQView gq_from_opposite(const PolarSpace& g, int p, int b) {
  if (g.collinear(p, b)) throw NotOpposite("base points are collinear", {p, b});
  GQView v;
  v.p = p;
  v.b = b;
  PointSet s = g.perp(p) & g.perp(b);
  v.points = to_ids(s);
  v.local_of.assign(g.num_points(), -1);
  for (int i = 0; i < static_cast<int>(v.points.size()); ++i) v.local_of[v.points[i]] = i;
  v.geom.num_points = static_cast<int>(v.points.size());
  std::vector<char> seen(g.num_lines(), 0);
  for (int x : v.points) {
    for (int l : g.lines_through(x)) {
      if (seen[l]) continue;
      seen[l] = 1;
      bool inside = true;
      for (int y : g.line_points(l)) inside = inside && s[y];
      if (inside) v.line_ids.push_back(l);
    }
  }
  std::sort(v.line_ids.begin(), v.line_ids.end());
  for (int l : v.line_ids) {
    std::vector<int> local;
    for (int y : g.line_points(l)) local.push_back(v.local_of[y]);
    std::sort(local.begin(), local.end());
    v.geom.lines.push_back(std::move(local));
  }
  v.geom.index();
  return v;
}

int residue_projection_line(const PolarSpace& g, int from, int to, int line) {
  if (g.collinear(from, to)) throw NotOpposite("residue projection between collinear points", {from, to});
  if (!g.line_contains(line, from)) throw PreconditionError("line does not pass through the source point", {line, from});
  const int u = proj_point_on_line(g, to, line);
  return g.line_of(to, u);
}

int residue_projection_plane(const PolarSpace& g, int from, int to, int plane) {
  if (g.collinear(from, to)) throw NotOpposite("residue projection between collinear points", {from, to});
  if (!g.plane_contains(plane, from)) throw PreconditionError("plane does not contain the source point", {plane, from});
  std::vector<int> meet;
  for (int x : g.plane_points(plane)) {
    if (g.collinear(x, to)) meet.push_back(x);
  }
  const int l = g.line_id(meet);
  return g.plane_of(l, to);
}

Element residue_projection(const PolarSpace& g, int from, int to, Element e) {
  if (e.dim == 1) return {1, residue_projection_line(g, from, to, e.id)};
  if (e.dim == 2) return {2, residue_projection_plane(g, from, to, e.id)};
  throw BadDimension("residue elements are lines or planes");
}

int Projectivity::image_line(int line) const {
  auto it = std::lower_bound(lines_.begin(), lines_.end(), line);
  if (it == lines_.end() || *it != line) throw PreconditionError("line is not in the domain residue", {line});
  return line_img_[it - lines_.begin()];
}

int Projectivity::image_plane(int plane) const {
  auto it = std::lower_bound(planes_.begin(), planes_.end(), plane);
  if (it == planes_.end() || *it != plane) throw PreconditionError("plane is not in the domain residue", {plane});
  return plane_img_[it - planes_.begin()];
}

Element Projectivity::apply(Element e) const {
  return e.dim == 1 ? Element{1, image_line(e.id)} : Element{2, image_plane(e.id)};
}

nlohmann::json Projectivity::audit_log() const {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : steps_) {
    steps.push_back({{"from", s.from},
                     {"to", s.to},
                     {"preimage", {s.preimage.dim, s.preimage.id}},
                     {"image", {s.image.dim, s.image.id}}});
  }
  return {{"bases", bases_}, {"steps", std::move(steps)}};
}

Projectivity compose_projectivity(const PolarSpace& g, const std::vector<int>& bases) {
  if (bases.empty()) throw PreconditionError("empty base sequence");
  for (std::size_t k = 1; k < bases.size(); ++k) {
    if (g.collinear(bases[k - 1], bases[k])) {
      throw ConsecutiveNotOpposite("bases " + std::to_string(k - 1) + " and " + std::to_string(k) + " are collinear",
                                   {static_cast<int>(k)});
    }
  }
  Projectivity t;
  t.bases_ = bases;
  t.lines_ = g.lines_through(bases.front());
  t.planes_ = g.planes_through(bases.front());
  auto run = [&](Element e) {
    for (std::size_t k = 1; k < bases.size(); ++k) {
      Element img = residue_projection(g, bases[k - 1], bases[k], e);
      t.steps_.push_back({bases[k - 1], bases[k], e, img});
      e = img;
    }
    return e.id;
  };
  for (int l : t.lines_) t.line_img_.push_back(run({1, l}));
  for (int pi : t.planes_) t.plane_img_.push_back(run({2, pi}));
  return t;
}

std::vector<int> gq_action(const PolarSpace& g, const Projectivity& theta, const GQView& gq) {
  if (theta.bases().front() != gq.p || theta.bases().back() != gq.p) {
    throw PreconditionError("projectivity is not a self-projectivity at the GQ base point");
  }
  std::vector<int> perm(gq.num_points());
  for (int x = 0; x < gq.num_points(); ++x) {
    const int img_line = theta.image_line(g.line_of(gq.p, gq.global(x)));
    const int y = proj_point_on_line(g, gq.b, img_line);
    perm[x] = gq.local(y);
  }
  return perm;
}

}  // namespace mforge
