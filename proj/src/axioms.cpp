#include "mforge/axioms.hpp"

#include <algorithm>
#include <string>

#include "mforge/errors.hpp"

namespace mforge {

AxiomStats axiom_check(const PolarSpace& g) {
  AxiomStats st;
  const int n = g.num_points();
  const int line_size = g.q() + 1;

  for (int p = 0; p < n; ++p) {
    if (!g.collinear(p, p)) throw AxiomViolation("point not in its own perp", {p});
    for (int r = 0; r < n; ++r) {
      if (g.collinear(p, r) != g.collinear(r, p)) throw AxiomViolation("asymmetric collinearity", {p, r});
    }
  }

  for (int l = 0; l < g.num_lines(); ++l) {
    const auto& pts = g.line_points(l);
    if (static_cast<int>(pts.size()) != line_size) {
      throw AxiomViolation("line " + std::to_string(l) + " has " + std::to_string(pts.size()) + " points", {l});
    }
    for (int a : pts) {
      for (int b : pts) {
        if (!g.collinear(a, b)) throw AxiomViolation("points of a line not collinear", {a, b, l});
      }
    }
  }

  // Partial linearity: every collinear pair of distinct points lies on exactly one line.
  std::vector<int> count(n);
  for (int p = 0; p < n; ++p) {
    std::fill(count.begin(), count.end(), 0);
    for (int l : g.lines_through(p)) {
      for (int x : g.line_points(l)) {
        if (x != p) ++count[x];
      }
    }
    for (int x = 0; x < n; ++x) {
      if (x == p) continue;
      const int want = g.collinear(p, x) ? 1 : 0;
      if (count[x] != want) {
        throw AxiomViolation("pair lies on " + std::to_string(count[x]) + " lines", {p, x});
      }
      if (want) ++st.collinear_pairs;
    }
  }
  st.collinear_pairs /= 2;

  // x-perp: proper, meets every line in one point or contains it.
  for (int x = 0; x < n; ++x) {
    const PointSet& xp = g.perp(x);
    if (static_cast<int>(xp.count()) == n) throw AxiomViolation("perp of a point is everything", {x});
    for (int l = 0; l < g.num_lines(); ++l) {
      ++st.incidence_tests;
      int hits = 0;
      for (int y : g.line_points(l)) hits += xp[y] ? 1 : 0;
      if (hits != 1 && hits != line_size) {
        throw AxiomViolation("perp meets line in " + std::to_string(hits) + " points", {x, l});
      }
    }
  }

  // Planes are maximal singular subspaces; every line lies in at least three.
  const int plane_size = g.q() * g.q() + g.q() + 1;
  for (int pi = 0; pi < g.num_planes(); ++pi) {
    const auto& pts = g.plane_points(pi);
    if (static_cast<int>(pts.size()) != plane_size) throw AxiomViolation("plane of wrong size", {pi});
    PointSet common = g.perp(pts);
    if (common != g.plane_set(pi)) throw AxiomViolation("plane is not maximal", {pi});
  }
  st.min_planes_per_line = g.num_lines() > 0 ? 1 << 30 : 0;
  for (int l = 0; l < g.num_lines(); ++l) {
    const int k = static_cast<int>(g.planes_on_line(l).size());
    st.min_planes_per_line = std::min(st.min_planes_per_line, k);
    if (k < 3) throw AxiomViolation("line lies in " + std::to_string(k) + " planes", {l});
  }
  return st;
}

void check_form_agreement(const PolarSpace& g) {
  const Form& f = g.form();
  for (int a = 0; a < g.num_points(); ++a) {
    if (!f.is_singular(g.vec(a))) throw AxiomViolation("point is not singular", {a});
    for (int b = a; b < g.num_points(); ++b) {
      const bool form_zero = f.bilinear(g.vec(a), g.vec(b)) == 0;
      if (form_zero != g.collinear(a, b)) throw AxiomViolation("adjacency disagrees with the form", {a, b});
    }
  }
}

}  // namespace mforge
