#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mforge/polar_space.hpp"

namespace mforge {

/// Totally singular subspace as a sorted point-id set.
struct SingularSubspace {
  int dim = -1;  // -1 empty, 0 point, 1 line, 2 plane
  std::vector<int> points;

  bool empty() const { return points.empty(); }
  bool operator==(const SingularSubspace&) const = default;
};

/// Closure of pts. Throws PreconditionError if pts are not pairwise collinear.
SingularSubspace make_subspace(const PolarSpace& g, std::span<const int> pts);
/// Points of U collinear to every point of V.
SingularSubspace proj_subspace(const PolarSpace& g, const SingularSubspace& U, const SingularSubspace& V);
bool subspaces_opposite(const PolarSpace& g, const SingularSubspace& U, const SingularSubspace& V);

/// The unique point of line l collinear with x; -1 if x is collinear with all of l.
int proj_point_on_line(const PolarSpace& g, int x, int l);

/// A rank-2 point-line geometry with local ids.
struct PointLineGeometry {
  int num_points = 0;
  std::vector<std::vector<int>> lines;        // sorted local point ids
  std::vector<std::vector<int>> point_lines;  // lines through each point
  std::vector<PointSet> collinear;            // reflexive

  void index();
  int line_of(int a, int b) const;
  bool line_contains(int l, int x) const;
  /// Partial linear and one-or-all axiom. Returns an empty string on success,
  /// otherwise a description of the failing configuration.
  std::string gq_violation() const;
  bool is_gq() const { return gq_violation().empty(); }
  /// Unique point of line l collinear with x (x off l); -1 otherwise.
  int proj_on_line(int x, int l) const;
};

/// Residue of a point: points are lines through it, lines are planes through it.
struct PointResidue {
  int center = -1;
  std::vector<int> line_ids;   // local point -> global line
  std::vector<int> plane_ids;  // local line -> global plane
  PointLineGeometry geom;
};

/// Throws BadDimension unless U is empty or a point. The empty residue is Δ
/// itself and is not materialized; callers pass a point.
PointResidue residue(const PolarSpace& g, const SingularSubspace& U);

/// Generalized quadrangle p-perp ∩ b-perp for opposite p, b.
struct GQView {
  int p = -1, b = -1;
  std::vector<int> points;    // local -> global, sorted
  std::vector<int> local_of;  // global -> local or -1
  std::vector<int> line_ids;  // local line -> global line
  PointLineGeometry geom;

  int local(int global) const { return local_of[global]; }
  int global(int local_id) const { return points[local_id]; }
  int num_points() const { return geom.num_points; }
  int num_lines() const { return static_cast<int>(line_ids.size()); }
  /// Local line id of a global line, -1 if the line is not inside the GQ.
  int local_line(int global_line) const;
};

/// Throws NotOpposite for collinear p, b.
GQView gq_from_opposite(const PolarSpace& g, int p, int b);

/// Line pu through `from` mapped to the line through `to` meeting it.
int residue_projection_line(const PolarSpace& g, int from, int to, int line);
/// Plane through `from` mapped to the plane through `to` meeting it in a line.
int residue_projection_plane(const PolarSpace& g, int from, int to, int plane);
Element residue_projection(const PolarSpace& g, int from, int to, Element e);

/// Chain of residue projections with its realized action on Res(p0).
class Projectivity {
 public:
  struct Step {
    int from, to;
    Element preimage, image;
  };

  const std::vector<int>& bases() const { return bases_; }
  int length() const { return static_cast<int>(bases_.size()) - 1; }
  bool is_self() const { return bases_.size() > 1 && bases_.front() == bases_.back(); }
  bool is_even() const { return length() % 2 == 0; }
  const std::vector<Step>& steps() const { return steps_; }

  /// Lines and planes through p0, in ascending id order, and their images.
  const std::vector<int>& domain_lines() const { return lines_; }
  const std::vector<int>& line_images() const { return line_img_; }
  const std::vector<int>& domain_planes() const { return planes_; }
  const std::vector<int>& plane_images() const { return plane_img_; }

  int image_line(int line) const;
  int image_plane(int plane) const;
  Element apply(Element e) const;

  /// Realized maps equal (base sequences may differ).
  bool same_map(const Projectivity& other) const {
    return lines_ == other.lines_ && line_img_ == other.line_img_ && plane_img_ == other.plane_img_;
  }
  bool is_identity() const { return line_img_ == lines_ && plane_img_ == planes_; }

  nlohmann::json audit_log() const;

  friend Projectivity compose_projectivity(const PolarSpace& g, const std::vector<int>& bases);

 private:
  std::vector<int> bases_;
  std::vector<int> lines_, line_img_, planes_, plane_img_;
  std::vector<Step> steps_;
};

/// Throws ConsecutiveNotOpposite (witness: offending index) if some consecutive pair is collinear.
Projectivity compose_projectivity(const PolarSpace& g, const std::vector<int>& bases);

/// Action x -> θ(px) ∩ b-perp of a self-projectivity at Γ.p on the local points of Γ.
std::vector<int> gq_action(const PolarSpace& g, const Projectivity& theta, const GQView& gq);

}  // namespace mforge
