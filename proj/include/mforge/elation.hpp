#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mforge/frames.hpp"
#include "mforge/perm.hpp"
#include "mforge/polar_space.hpp"
#include "mforge/subspace.hpp"

namespace mforge {

/// Common point of two distinct lines, -1 if they are equal or disjoint.
int lines_meet(const PolarSpace& g, int l1, int l2);
/// Throws ChainNotOpposite (witness: indices k-1, k) on a collinear consecutive pair.
void require_chain(const PolarSpace& g, const std::vector<int>& bases);

// GQ recipes. All point arguments are global ids of points of Γ = p⊥ ∩ b⊥.

struct FirstKindRecipe {
  int p, b, q, d, u, n, u_t, n_t, j, i, l;
  std::vector<int> bases() const { return {p, b, j, l, p}; }
  nlohmann::json to_json() const;
};

struct SecondKindRecipe {
  int p, b, d, q, u, n, u_t, jp, jpp, l, j;
  bool l_perp_n = false, l_perp_q = false;
  std::vector<int> bases() const { return {p, b, j, l, p}; }
  nlohmann::json to_json() const;
};

template <class R>
struct GQElation {
  R recipe;
  Projectivity theta;
  Perm action;  // on local points of Γ
};

using FirstKindElation = GQElation<FirstKindRecipe>;
using SecondKindElation = GQElation<SecondKindRecipe>;

/// θ = proj_p^ℓ ∘ proj_ℓ^j ∘ proj_j^b ∘ proj_b^p with i = ju ∩ pu′, ℓ = proj_bd(i).
/// Apartment (q, d, n, u) of Γ with q ⊥ d ⊥ n ⊥ u ⊥ q; u′ on uq∖{q}; j on pq∖{p,q}.
FirstKindElation build_first_kind_gq_elation(const PolarSpace& g, const GQView& gq, int q, int d, int u, int n,
                                             int u_t, int j);
/// j′ on bu∖{b,u}; j″ = proj_{pu′}(j′); ℓ = proj_{j′j″}(d); j = proj_{pd}(j′).
/// Apartment (d, q, u, n) with u opposite d; u′ ∈ {q,n}⊥ ∩ Γ, u′ ≠ d.
SecondKindElation build_second_kind_gq_elation(const PolarSpace& g, const GQView& gq, int d, int q, int u, int n,
                                               int u_t, int jp);

/// Points of line ab other than the listed ones.
std::vector<int> line_points_except(const PolarSpace& g, int a, int b, std::vector<int> except);
/// Points of Γ collinear with both x and y, excluding `except`.
std::vector<int> gq_common_neighbours(const PolarSpace& g, const GQView& gq, int x, int y, int except = -1);

struct GQRootData {
  int q, d, u, n;  // global; first kind: path (uq, q, qd, d, dn); second kind: path (q, qd, d, dn, n)
};
/// Apartment data for a root of Γ (local path) from an apartment containing it.
GQRootData gq_root_data(const GQView& gq, const GQRoot& r, const GQApartment& a);

struct VariantAResult {
  int p, b, q, d, u, n, v, v_t, j, i, l;
  Projectivity theta;
  Perm action;
  bool moves_v = false;
  bool lines_through_q_stable = false;
  bool lines_through_n_stable = false;
};
/// ℓ = proj_bn(pv′ ∩ jv) for v, v′ on uq∖{u, q}.
VariantAResult observation_variant_a(const PolarSpace& g, const GQView& gq, int q, int d, int u, int n, int v,
                                     int v_t, int j);

struct VariantBResult {
  int p, b, q, d, u, n, j, l;
  Projectivity theta;
  Perm action;
  bool fixes_planes_pq = false;   // every line of Γ through q stabilized
  bool fixes_lines_puq = false;   // every point of uq fixed
  bool fixes_lines_pdq = false;   // every point of dq fixed
  bool grid = false;
  std::vector<int> grid_lines;    // pn, K1, bq, pq, K2, bn
  bool identity = false;
};
/// ℓ on bq∖{q}. The grid predicate: K1 = j·proj_bn(j), K2 = ℓ·proj_{K1}(ℓ) meets pn,
/// and the six lines are distinct.
VariantBResult observation_variant_b(const PolarSpace& g, const GQView& gq, int q, int d, int u, int n, int j, int l);

// Plane elations and η.

struct PlaneElation {
  int plane, center, axis, m, m_t;
  std::vector<int> points, images;  // plane points ascending and their images
  int image(int x) const;
};

/// Throws BadConfiguration unless center ∈ axis ⊂ plane, m ∈ plane∖axis, m′ ∈ (center·m)∖{center}.
PlaneElation plane_elation_build(const PolarSpace& g, int plane, int center, int axis, int m, int m_t);

/// x ↦ proj_M(η(proj_K x)); images listed in the order of M's points. Throws LinesNotOpposite.
std::vector<int> copy_action(const PolarSpace& g, int K, int M, const std::vector<int>& eta_on_K);

enum class EtaSource { Outside, Fixed, Seed, Copied };

struct EtaMap {
  int d, q, m, m_t, seed_plane;
  Perm image;                       // -1 outside d⊥ ∪ q⊥
  std::vector<EtaSource> source;
  std::vector<std::pair<int, int>> copied_via;  // (K, M) for copied points
  int copies = 0;
  int star_checks = 0;      // seed lines K1, K2 copied onto the same M
  int star_mismatches = 0;
  int back_checks = 0;      // copies from different M onto the same line through d
  int back_mismatches = 0;
  std::vector<int> star_witness;

  bool in_domain(int x) const { return image[x] >= 0; }
  int operator()(int x) const { return image[x]; }
};

/// Throws PreconditionError (d ⊥ q, d ∈ mm′, m not collinear to q) and CoverageIncomplete.
/// seed_plane = -1 picks the lowest plane through dq.
EtaMap build_eta(const PolarSpace& g, int d, int q, int m, int m_t, int seed_plane = -1);

struct EtaProperties {
  bool fixes_common = false;  // (i)
  bool translations = false;  // (ii)
  bool collinearity = false;  // (iii)
  int planes_checked = 0;
  long pairs_checked = 0;
  std::string failure;
  std::vector<int> witness;
  bool ok() const { return fixes_common && translations && collinearity; }
};
EtaProperties check_eta(const PolarSpace& g, const EtaMap& eta);

/// Ordered opposite pairs (p, b) with p, b collinear to d, q and x, lexicographic.
std::vector<std::pair<int, int>> host_pairs(const PolarSpace& g, int d, int q, int x);

struct EtaPb {
  int image = -1;
  int p, b, n, n_t, u, u_t, j;
  bool boundary_agrees = false;  // θ = η on Γ ∩ (d⊥ ∪ q⊥)
  int boundary_checked = 0;
  FirstKindElation elation;
  Perm global_map;  // action on Γ in global ids, -1 off Γ
};
/// Root elation of p⊥ ∩ b⊥ with root (d, dq, q) matching η on the boundary, at x.
EtaPb eta_pb(const PolarSpace& g, const EtaMap& eta, int x, int p, int b);

struct CopyCoherence {
  bool pass = false;
  int lines_checked = 0, planes_checked = 0;
  std::string failure;
};
/// θ_p copied from Res(p) to Res(b) equals θ_b built in Res(b) with the roles of p and b swapped.
CopyCoherence verify_copy_coherence(const PolarSpace& g, const EtaMap& eta, int p, int b);

struct RestrictionCheck {
  bool pass = false;
  int pairs = 0;
  std::string failure;
  std::vector<int> witness;
};
/// φ restricted to p⊥ ∩ b⊥ equals the GQ first-kind elation matching η, for every
/// opposite pair (p, b) in {d,q}⊥ (the first `max_pairs` if nonzero).
RestrictionCheck verify_gq_restrictions(const PolarSpace& g, const EtaMap& eta, const Perm& phi,
                                        std::size_t max_pairs = 0);

// Rank-3 extensions.

enum class Provenance { FixedCoplanar, Eta, EtaPb, Fixed, OppositeO, PerpO, Coplanar };
std::string provenance_name(Provenance p);

struct Extension {
  Perm perm;
  std::vector<Provenance> provenance;
  std::vector<std::pair<int, int>> host;  // first kind, case 3
  int mismatches = 0;                     // well-definedness discrepancies found while building
  long comparisons = 0;
  std::vector<int> mismatch_witness;
  nlohmann::json params;

  nlohmann::json to_json() const;
};

struct FirstKindOptions {
  bool all_host_pairs = false;  // recompute case 3 with every admissible (p, b)
  int seed_plane = -1;
};
Extension extend_first_kind(const PolarSpace& g, int d, int q, int m, int m_t, const FirstKindOptions& opt = {});
/// Same with a prebuilt η.
Extension extend_first_kind(const PolarSpace& g, const EtaMap& eta, const FirstKindOptions& opt = {});

struct SecondKindConfig {
  int alpha, beta, o, L, M, p, p_t;
};
/// Throws PreconditionError on an invalid configuration, CoverageIncomplete if η
/// cannot be copied to every point of α ∪ β other than o.
Extension extend_second_kind(const PolarSpace& g, const SecondKindConfig& c);

/// d = p_{-i}, q = p_{-j}, m = p_j; targets m′ on dm∖{d}.
struct FirstKindParams {
  int d, q, m;
  std::vector<int> targets;
};
FirstKindParams first_kind_params(const PolarSpace& g, const Root& r);

/// o = p_{-i}, α = ⟨p_{-i}, p_j, p_k⟩, β = ⟨p_{-i}, p_{-j}, p_{-k}⟩, L = p_j p_k, M = p_{-j}p_{-k}, p = p_i;
/// targets: points of L⊥ ∩ M⊥ opposite o.
struct SecondKindParams {
  SecondKindConfig config;
  std::vector<int> targets;
};
SecondKindParams second_kind_params(const PolarSpace& g, const Root& r);

}  // namespace mforge
