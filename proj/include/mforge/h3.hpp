#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "mforge/perm.hpp"
#include "mforge/polar_space.hpp"

namespace mforge {

/// a + bφ with φ² = φ + 1.
struct ZPhi {
  long a = 0, b = 0;
  ZPhi operator+(ZPhi o) const { return {a + o.a, b + o.b}; }
  ZPhi operator-(ZPhi o) const { return {a - o.a, b - o.b}; }
  ZPhi operator*(ZPhi o) const { return {a * o.a + b * o.b, a * o.b + b * o.a + b * o.b}; }
  bool operator==(const ZPhi&) const = default;
};

/// Thin H3 geometry: icosahedron vertices, edges and faces.
struct ThinH3Geom {
  std::vector<std::array<ZPhi, 3>> coords;
  std::vector<std::array<int, 2>> lines;
  std::vector<std::array<int, 3>> planes;
  std::vector<std::vector<int>> dist;

  int num_points() const { return static_cast<int>(coords.size()); }
  bool collinear(int a, int b) const { return dist[a][b] <= 1; }
  std::vector<int> neighbours(int p) const;
  int line_of(int a, int b) const;                 // -1 unless adjacent
  int plane_of(int a, int b, int c) const;         // -1 unless a face
  std::vector<int> lines_through(int p) const;
  std::vector<int> planes_through(int p) const;
  bool line_contains(int l, int x) const { return lines[l][0] == x || lines[l][1] == x; }
  bool plane_contains(int pi, int x) const;
  std::vector<int> element_points(Element e) const;
};

/// Vertices are the cyclic shifts of (0, ±1, ±φ); id = 4·shift + 2·[second sign < 0] + [third sign < 0].
ThinH3Geom build_icosahedron();

enum class H3Class { Equal, Collinear, Distance2, Opposite };
std::string h3_class_name(H3Class c);

struct H3Relation {
  int p = -1, b = -1;
  H3Class cls = H3Class::Equal;
  int line = -1;                           // distance 2: p⊥ ∩ b⊥
  std::vector<int> pentagon_p, pentagon_b;  // opposite: p⊥ ∩ b⊥⊥ and b⊥ ∩ p⊥⊥
  bool certificate_ok = false;
};

H3Relation classify_pair(const ThinH3Geom& g, int p, int b);

/// Unique line pp′ (see the projection map). Throws NotOpposite, PreconditionError.
int h3_proj_plane(const ThinH3Geom& g, int b, int plane, int p);
/// Unique plane ⟨p, L′⟩. Throws NotOpposite, PreconditionError.
int h3_proj_line(const ThinH3Geom& g, int b, int line, int p);

struct H3ChainResult {
  Element image;
  std::vector<Element> log;  // start, then the image after each step
};
/// Throws ConsecutiveNotOpposite (witness: step index).
H3ChainResult h3_chain_eval(const ThinH3Geom& g, const std::vector<int>& bases, Element start);

struct H3Labels {
  int b = -1, p = -1;
  std::array<int, 5> bi{}, pi{};  // p_i adjacent to b_{i-1} and b_i
};
H3Labels h3_labels(const ThinH3Geom& g, int b);

struct H3Preconditions {
  H3Labels labels;
  std::vector<int> choices_b4, choices_d, choices_b3;
  int table_rows = 0, table_ok = 0;  // b ⊼ p rows of the mapping table
  std::string conclusion;            // "NotInstantiableInThinModel" or "Instantiable"
  std::vector<std::string> unconstructed;
  nlohmann::json to_json() const;
};
H3Preconditions h3_recipe_preconditions(const ThinH3Geom& g, int b);

struct H3Rigidity {
  bool pass = false;
  int chains = 0;
  std::size_t group_order = 0;
  int pentagon_automorphisms = 0;
  int rigid_members_checked = 0;
  std::string failure;
};
/// Self-projectivities of Res(b) by closed chains of length ≤ cap, closed under composition.
H3Rigidity h3_residual_rigidity(const ThinH3Geom& g, int b, int cap, std::size_t closure_cap = 1000000);

struct PentagonFeasibility {
  int s = 1, t = 1;
  long v = 0, k = 0, lambda = 0, mu = 1, lines = 0;
  bool delta_square = false;
  std::string r, s_eig, f, g;  // exact values as strings
  bool feasible = false;
  std::string reason;
  nlohmann::json to_json() const;
};

/// Point graph of a generalised pentagon of order (s,t) is strongly regular with
/// v = 1 + s(t+1)(1+st), k = s(t+1), λ = s−1, μ = 1. Infeasible when a multiplicity
/// is non-integral or negative, for the point graph or its dual, or when the
/// incidence-rank bound mult(−(t+1)) ≥ v − b fails.
PentagonFeasibility pentagon_feasibility(int s, int t);

}  // namespace mforge
