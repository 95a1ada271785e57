#include "mforge/h3.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <cmath>
#include <deque>
#include <set>

#include "mforge/errors.hpp"

namespace mforge {

std::vector<int> ThinH3Geom::neighbours(int p) const {
  std::vector<int> out;
  for (int x = 0; x < num_points(); ++x) {
    if (dist[p][x] == 1) out.push_back(x);
  }
  return out;
}

int ThinH3Geom::line_of(int a, int b) const {
  std::array<int, 2> k{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(lines.begin(), lines.end(), k);
  return it != lines.end() && *it == k ? static_cast<int>(it - lines.begin()) : -1;
}

int ThinH3Geom::plane_of(int a, int b, int c) const {
  std::array<int, 3> k{a, b, c};
  std::sort(k.begin(), k.end());
  auto it = std::lower_bound(planes.begin(), planes.end(), k);
  return it != planes.end() && *it == k ? static_cast<int>(it - planes.begin()) : -1;
}

std::vector<int> ThinH3Geom::lines_through(int p) const {
  std::vector<int> out;
  for (int l = 0; l < static_cast<int>(lines.size()); ++l) {
    if (line_contains(l, p)) out.push_back(l);
  }
  return out;
}

std::vector<int> ThinH3Geom::planes_through(int p) const {
  std::vector<int> out;
  for (int pi = 0; pi < static_cast<int>(planes.size()); ++pi) {
    if (plane_contains(pi, p)) out.push_back(pi);
  }
  return out;
}

bool ThinH3Geom::plane_contains(int pi, int x) const {
  return planes[pi][0] == x || planes[pi][1] == x || planes[pi][2] == x;
}

std::vector<int> ThinH3Geom::element_points(Element e) const {
  if (e.dim == 0) return {e.id};
  if (e.dim == 1) return {lines[e.id].begin(), lines[e.id].end()};
  return {planes[e.id].begin(), planes[e.id].end()};
}

ThinH3Geom build_icosahedron() {
  ThinH3Geom g;
  const ZPhi zero{0, 0}, one{1, 0}, phi{0, 1};
  for (int c = 0; c < 3; ++c) {
    for (int s1 : {1, -1}) {
      for (int s2 : {1, -1}) {
        std::array<ZPhi, 3> v{};
        v[c] = zero;
        v[(c + 1) % 3] = one * ZPhi{s1, 0};
        v[(c + 2) % 3] = phi * ZPhi{s2, 0};
        g.coords.push_back(v);
      }
    }
  }
  const int n = g.num_points();
  auto sq = [&](int a, int b) {
    ZPhi s{};
    for (int k = 0; k < 3; ++k) {
      const ZPhi d = g.coords[a][k] - g.coords[b][k];
      s = s + d * d;
    }
    return s;
  };
  std::vector<std::vector<int>> adj(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (sq(a, b) == ZPhi{4, 0}) {
        g.lines.push_back({a, b});
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b : adj[a]) {
      for (int c : adj[b]) {
        if (a < b && b < c && std::find(adj[a].begin(), adj[a].end(), c) != adj[a].end()) g.planes.push_back({a, b, c});
      }
    }
  }
  std::sort(g.planes.begin(), g.planes.end());
  g.dist.assign(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::deque<int> queue{s};
    g.dist[s][s] = 0;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : adj[x]) {
        if (g.dist[s][y] < 0) {
          g.dist[s][y] = g.dist[s][x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  return g;
}

std::string h3_class_name(H3Class c) {
  switch (c) {
    case H3Class::Equal: return "equal";
    case H3Class::Collinear: return "collinear";
    case H3Class::Distance2: return "distance-2";
    case H3Class::Opposite: return "opposite";
  }
  return "?";
}

namespace {

std::vector<int> at_distance(const ThinH3Geom& g, int from, int d, const std::vector<int>& among) {
  std::vector<int> out;
  for (int x : among) {
    if (g.dist[from][x] == d) out.push_back(x);
  }
  return out;
}

// Induced subgraph on pts is a single 5-cycle.
bool is_pentagon(const ThinH3Geom& g, const std::vector<int>& pts) {
  if (pts.size() != 5) return false;
  for (int x : pts) {
    int deg = 0;
    for (int y : pts) deg += g.dist[x][y] == 1 ? 1 : 0;
    if (deg != 2) return false;
  }
  std::vector<int> seen{pts[0]};
  for (std::size_t k = 0; k < seen.size(); ++k) {
    for (int y : pts) {
      if (g.dist[seen[k]][y] == 1 && std::find(seen.begin(), seen.end(), y) == seen.end()) seen.push_back(y);
    }
  }
  return seen.size() == 5;
}

void require_opposite(const ThinH3Geom& g, int a, int b) {
  if (g.dist[a][b] != 3) throw NotOpposite("points are not opposite", {a, b});
}

}  // namespace

H3Relation classify_pair(const ThinH3Geom& g, int p, int b) {
  H3Relation r;
  r.p = p;
  r.b = b;
  switch (g.dist[p][b]) {
    case 0:
      r.cls = H3Class::Equal;
      r.certificate_ok = p == b;
      break;
    case 1:
      r.cls = H3Class::Collinear;
      r.line = g.line_of(p, b);
      r.certificate_ok = r.line >= 0;
      break;
    case 2: {
      r.cls = H3Class::Distance2;
      const auto common = at_distance(g, b, 1, g.neighbours(p));
      if (common.size() == 2) r.line = g.line_of(common[0], common[1]);
      r.certificate_ok = r.line >= 0;
      break;
    }
    default:
      r.cls = H3Class::Opposite;
      r.pentagon_p = at_distance(g, b, 2, g.neighbours(p));
      r.pentagon_b = at_distance(g, p, 2, g.neighbours(b));
      r.certificate_ok = is_pentagon(g, r.pentagon_p) && is_pentagon(g, r.pentagon_b);
  }
  return r;
}

int h3_proj_plane(const ThinH3Geom& g, int b, int plane, int p) {
  if (!g.plane_contains(plane, b)) throw PreconditionError("plane does not contain b", {plane, b});
  require_opposite(g, b, p);
  std::vector<int> far;
  const auto& pts = g.planes[plane];
  for (int k = 0; k < 3; ++k) {
    for (int m = k + 1; m < 3; ++m) {
      if (g.dist[p][pts[k]] == 2 && g.dist[p][pts[m]] == 2) far.push_back(g.line_of(pts[k], pts[m]));
    }
  }
  if (far.size() != 1) throw PreconditionError("no unique line at distance 2", {plane, p});
  std::vector<int> cand;
  for (int x : g.neighbours(p)) {
    if (g.collinear(x, g.lines[far[0]][0]) && g.collinear(x, g.lines[far[0]][1])) cand.push_back(x);
  }
  if (cand.size() != 1) throw PreconditionError("no unique point of p-perp on the line", {far[0], p});
  return g.line_of(p, cand[0]);
}

int h3_proj_line(const ThinH3Geom& g, int b, int line, int p) {
  if (!g.line_contains(line, b)) throw PreconditionError("line does not contain b", {line, b});
  require_opposite(g, b, p);
  std::vector<int> ell;
  for (int x : g.lines[line]) {
    if (g.dist[p][x] == 2) ell.push_back(x);
  }
  if (ell.size() != 1) throw PreconditionError("no unique point at distance 2", {line, p});
  const auto common = at_distance(g, ell[0], 1, g.neighbours(p));
  if (common.size() != 2 || g.line_of(common[0], common[1]) < 0) {
    throw PreconditionError("no unique line in the common perp", {ell[0], p});
  }
  return g.plane_of(p, common[0], common[1]);
}

H3ChainResult h3_chain_eval(const ThinH3Geom& g, const std::vector<int>& bases, Element start) {
  H3ChainResult res{start, {start}};
  for (std::size_t k = 1; k < bases.size(); ++k) {
    if (g.dist[bases[k - 1]][bases[k]] != 3) {
      throw ConsecutiveNotOpposite("bases not opposite", {static_cast<int>(k - 1), static_cast<int>(k)});
    }
    Element& e = res.image;
    e = e.dim == 1 ? Element{2, h3_proj_line(g, bases[k - 1], e.id, bases[k])}
                   : Element{1, h3_proj_plane(g, bases[k - 1], e.id, bases[k])};
    res.log.push_back(e);
  }
  return res;
}

H3Labels h3_labels(const ThinH3Geom& g, int b) {
  H3Labels L;
  L.b = b;
  for (int x = 0; x < g.num_points(); ++x) {
    if (g.dist[b][x] == 3) L.p = x;
  }
  auto nb = g.neighbours(b);
  L.bi[0] = nb[0];
  for (int k = 1; k < 5; ++k) {
    for (int x : nb) {
      const bool used = std::find(L.bi.begin(), L.bi.begin() + k, x) != L.bi.begin() + k;
      if (!used && g.dist[L.bi[k - 1]][x] == 1) {
        L.bi[k] = x;
        break;
      }
    }
  }
  const auto np = g.neighbours(L.p);
  for (int i = 0; i < 5; ++i) {
    const int prev = L.bi[(i + 4) % 5], cur = L.bi[i];
    for (int x : np) {
      if (g.dist[x][prev] == 1 && g.dist[x][cur] == 1) L.pi[i] = x;
    }
  }
  return L;
}

nlohmann::json H3Preconditions::to_json() const {
  return {{"b", labels.b}, {"p", labels.p}, {"b_i", labels.bi}, {"p_i", labels.pi},
          {"choices_b4_prime", choices_b4}, {"choices_d", choices_d}, {"choices_b3_prime", choices_b3},
          {"table_rows", table_rows}, {"table_ok", table_ok}, {"conclusion", conclusion},
          {"unconstructed", unconstructed}};
}

H3Preconditions h3_recipe_preconditions(const ThinH3Geom& g, int b) {
  H3Preconditions r;
  r.labels = h3_labels(g, b);
  const auto& L = r.labels;
  const int p = L.p;
  // b ⊼ p half of the mapping table: bb_i ↦ ⟨p, p_i, p_{i+1}⟩, ⟨b, b_{i-1}, b_i⟩ ↦ pp_i.
  for (int i = 0; i < 5; ++i) {
    ++r.table_rows;
    if (h3_proj_line(g, b, g.line_of(b, L.bi[i]), p) == g.plane_of(p, L.pi[i], L.pi[(i + 1) % 5])) ++r.table_ok;
    ++r.table_rows;
    if (h3_proj_plane(g, b, g.plane_of(b, L.bi[(i + 4) % 5], L.bi[i]), p) == g.line_of(p, L.pi[i])) ++r.table_ok;
  }
  for (int x : g.lines[g.line_of(L.bi[0], L.bi[4])]) {
    if (x != L.bi[0] && x != L.bi[4]) r.choices_b4.push_back(x);
  }
  for (int x : g.lines[g.line_of(b, L.bi[1])]) {
    if (x != b && x != L.bi[1]) r.choices_d.push_back(x);
  }
  for (int b4 : r.choices_b4) {
    for (int x : g.neighbours(b)) {
      if (g.dist[x][L.bi[2]] == 1 && g.dist[x][b4] == 1) r.choices_b3.push_back(x);
    }
  }
  const bool ok = !r.choices_b4.empty() && !r.choices_d.empty() && !r.choices_b3.empty();
  r.conclusion = ok ? "Instantiable" : "NotInstantiableInThinModel";
  if (!ok) r.unconstructed = {"b3'", "b4'", "d", "d3", "d4", "p4'", "q", "q0", "q1", "q2", "q3", "q4", "q4'"};
  return r;
}

H3Rigidity h3_residual_rigidity(const ThinH3Geom& g, int b, int cap, std::size_t closure_cap) {
  H3Rigidity res;
  if (cap < 4) throw PreconditionError("cap must be at least 4", {cap});
  const auto lines = g.lines_through(b), planes = g.planes_through(b);
  const int n = static_cast<int>(lines.size() + planes.size());
  auto index_of = [&](Element e) {
    const auto& v = e.dim == 1 ? lines : planes;
    const int off = e.dim == 1 ? 0 : static_cast<int>(lines.size());
    return off + static_cast<int>(std::find(v.begin(), v.end(), e.id) - v.begin());
  };
  auto element_at = [&](int k) {
    return k < static_cast<int>(lines.size()) ? Element{1, lines[k]} : Element{2, planes[k - lines.size()]};
  };

  std::vector<Perm> gens;
  std::vector<int> chain{b};
  auto dfs = [&](auto&& self) -> void {
    const int len = static_cast<int>(chain.size()) - 1;
    if (len >= 2 && chain.back() == b) {
      ++res.chains;
      Perm m(n);
      for (int k = 0; k < n; ++k) m[k] = index_of(h3_chain_eval(g, chain, element_at(k)).image);
      gens.push_back(m);
    }
    if (len == cap) return;
    for (int x = 0; x < g.num_points(); ++x) {
      if (g.dist[chain.back()][x] == 3) {
        chain.push_back(x);
        self(self);
        chain.pop_back();
      }
    }
  };
  dfs(dfs);
  const auto group = group_closure(gens, n, closure_cap);
  res.group_order = group.size();

  auto incident = [&](int a, int c) {
    const Element ea = element_at(a), ec = element_at(c);
    if (ea.dim == ec.dim) return false;
    const Element l = ea.dim == 1 ? ea : ec, pl = ea.dim == 1 ? ec : ea;
    for (int x : g.lines[l.id]) {
      if (!g.plane_contains(pl.id, x)) return false;
    }
    return true;
  };
  const H3Labels L = h3_labels(g, b);
  for (const auto& s : group) {
    bool aut = true;
    for (int a = 0; a < n && aut; ++a) {
      aut = element_at(s[a]).dim == element_at(a).dim;
      for (int c = 0; c < n && aut; ++c) aut = incident(a, c) == incident(s[a], s[c]);
    }
    if (!aut) {
      res.failure = "self-projectivity is not a pentagon automorphism";
      return res;
    }
    ++res.pentagon_automorphisms;
    for (int i = 0; i < 5; ++i) {
      const int v0 = index_of({1, g.line_of(b, L.bi[i])}), v1 = index_of({1, g.line_of(b, L.bi[(i + 1) % 5])});
      const int l0 = index_of({2, g.plane_of(b, L.bi[(i + 4) % 5], L.bi[i])});
      const int l1 = index_of({2, g.plane_of(b, L.bi[i], L.bi[(i + 1) % 5])});
      const int l2 = index_of({2, g.plane_of(b, L.bi[(i + 1) % 5], L.bi[(i + 2) % 5])});
      if (s[v0] == v0 && s[v1] == v1 && s[l0] == l0 && s[l1] == l1 && s[l2] == l2) {
        ++res.rigid_members_checked;
        if (!is_identity(s)) {
          res.failure = "member fixing two adjacent vertices and their lines is not the identity";
          return res;
        }
      }
    }
  }
  res.pass = true;
  return res;
}

namespace {

using Q = boost::rational<long long>;

std::string str(Q x) {
  return x.denominator() == 1 ? std::to_string(x.numerator())
                              : std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

long long isqrt_exact(long long d) {
  if (d < 0) return -1;
  long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(d))));
  while (r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r * r == d ? r : -1;
}

struct SrgSpectrum {
  long long v, k, lambda, mu;
  bool square = false;
  Q r, s, f, g;
  bool integral = false;
  std::string reason;
};

SrgSpectrum spectrum(int s, int t) {
  SrgSpectrum sp;
  sp.v = 1 + static_cast<long long>(s) * (t + 1) * (1 + static_cast<long long>(s) * t);
  sp.k = static_cast<long long>(s) * (t + 1);
  sp.lambda = s - 1;
  sp.mu = 1;
  const long long lm = sp.lambda - sp.mu;
  const long long delta = lm * lm + 4 * (sp.k - sp.mu);
  const long long n = 2 * sp.k + (sp.v - 1) * lm;
  const long long root = isqrt_exact(delta);
  sp.square = root >= 0;
  if (!sp.square) {
    // Irrational eigenvalues: equal multiplicities (v-1)/2 forced.
    sp.f = sp.g = Q(sp.v - 1, 2);
    sp.integral = n == 0 && (sp.v - 1) % 2 == 0;
    if (!sp.integral) sp.reason = "irrational eigenvalues without conference parameters";
    return sp;
  }
  sp.r = Q(lm + root, 2);
  sp.s = Q(lm - root, 2);
  sp.f = Q(sp.v - 1, 2) - Q(n, 2 * root);
  sp.g = Q(sp.v - 1, 2) + Q(n, 2 * root);
  sp.integral = sp.f.denominator() == 1 && sp.g.denominator() == 1 && sp.f >= 0 && sp.g >= 0;
  if (!sp.integral) sp.reason = "non-integral or negative multiplicity";
  return sp;
}

// Multiplicity of eigenvalue x (0 if it is not an eigenvalue other than k).
Q multiplicity(const SrgSpectrum& sp, Q x) {
  if (!sp.square) return Q(0);
  if (x == sp.r) return sp.f;
  if (x == sp.s) return sp.g;
  return Q(0);
}

}  // namespace

nlohmann::json PentagonFeasibility::to_json() const {
  return {{"s", s}, {"t", t}, {"v", v}, {"k", k}, {"lambda", lambda}, {"mu", mu}, {"lines", lines},
          {"r", r}, {"s_eigenvalue", s_eig}, {"f", f}, {"g", g}, {"feasible", feasible}, {"reason", reason}};
}

PentagonFeasibility pentagon_feasibility(int s, int t) {
  if (s < 1 || t < 1) throw PreconditionError("order must be positive", {s, t});
  PentagonFeasibility out;
  out.s = s;
  out.t = t;
  const SrgSpectrum pt = spectrum(s, t), dual = spectrum(t, s);
  out.v = pt.v;
  out.k = pt.k;
  out.lambda = pt.lambda;
  out.mu = pt.mu;
  out.lines = dual.v;
  out.delta_square = pt.square;
  out.r = pt.square ? str(pt.r) : "irrational";
  out.s_eig = pt.square ? str(pt.s) : "irrational";
  out.f = str(pt.f);
  out.g = str(pt.g);
  if (!pt.integral) {
    out.reason = "points: " + pt.reason;
    return out;
  }
  if (!dual.integral) {
    out.reason = "lines: " + dual.reason;
    return out;
  }
  // N Nᵀ = A + (t+1)I has rank at most b, so −(t+1) has multiplicity ≥ v − b.
  if (pt.v > dual.v && multiplicity(pt, Q(-(t + 1))) < Q(pt.v - dual.v)) {
    out.reason = "points: eigenvalue -(t+1) multiplicity below v - b";
    return out;
  }
  if (dual.v > pt.v && multiplicity(dual, Q(-(s + 1))) < Q(dual.v - pt.v)) {
    out.reason = "lines: eigenvalue -(s+1) multiplicity below b - v";
    return out;
  }
  out.feasible = true;
  out.reason = "all multiplicity conditions hold";
  return out;
}

}  // namespace mforge
