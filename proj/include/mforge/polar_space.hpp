#pragma once

#include <boost/dynamic_bitset.hpp>
#include <compare>
#include <map>
#include <span>
#include <vector>

#include "mforge/field.hpp"
#include "mforge/form.hpp"

namespace mforge {

using PointSet = boost::dynamic_bitset<>;

std::vector<int> to_ids(const PointSet& s);

/// A point, line or plane of the polar space, addressed by (dimension, id).
struct Element {
  int dim = 0;  // 0 point, 1 line, 2 plane
  int id = -1;

  auto operator<=>(const Element&) const = default;
};

/// Rank-3 polar space as an explicit, immutable incidence structure.
///
/// Point ids are the lexicographic ranks of normalized coordinate vectors;
/// lines and planes are sorted point-id tuples, numbered lexicographically.
/// Collinearity is reflexive: a point lies in its own perp.
class PolarSpace {
 public:
  struct Parts {
    FormSpec form;
    std::vector<Vec> points;
    std::vector<std::vector<int>> lines;
    std::vector<std::vector<int>> planes;
    std::vector<PointSet> adjacency;  // symmetric, diagonal set
  };

  /// Indexes the given tables. Ids must be in range; no geometric validation
  /// happens here (see axiom_check for that).
  explicit PolarSpace(Parts parts);

  const Parts& parts() const { return parts_; }
  const Form& form() const { return form_; }
  const PrimeField& field() const { return form_.field(); }
  int q() const { return parts_.form.q; }
  int dim() const { return parts_.form.dim(); }
  int rank() const { return 3; }

  int num_points() const { return static_cast<int>(parts_.points.size()); }
  int num_lines() const { return static_cast<int>(parts_.lines.size()); }
  int num_planes() const { return static_cast<int>(parts_.planes.size()); }

  const Vec& vec(int p) const { return parts_.points[p]; }
  /// Id of the projective point spanned by v, or -1 if v is zero or not singular.
  int point_id(const Vec& v) const;

  bool collinear(int a, int b) const { return parts_.adjacency[a][b]; }
  bool opposite(int a, int b) const { return !collinear(a, b); }
  const PointSet& perp(int p) const { return parts_.adjacency[p]; }
  PointSet perp(std::span<const int> pts) const;
  PointSet all_points() const;

  const std::vector<int>& line_points(int l) const { return parts_.lines[l]; }
  const std::vector<int>& plane_points(int pi) const { return parts_.planes[pi]; }
  const std::vector<int>& element_points(Element e) const;
  const std::vector<int>& lines_through(int p) const { return lines_through_[p]; }
  const std::vector<int>& planes_through(int p) const { return planes_through_point_[p]; }
  const std::vector<int>& planes_on_line(int l) const { return planes_on_line_[l]; }
  const std::vector<int>& plane_lines(int pi) const { return plane_lines_[pi]; }
  const PointSet& plane_set(int pi) const { return plane_sets_[pi]; }

  bool line_contains(int l, int p) const;
  bool plane_contains(int pi, int p) const { return plane_sets_[pi][p]; }

  /// Line through two distinct collinear points, -1 otherwise.
  int line_of(int a, int b) const;
  /// Plane containing line l and point c (c off l), -1 if there is none.
  int plane_of(int l, int c) const;
  /// Plane spanned by the given points if they span a singular plane, else -1.
  int plane_spanned(std::span<const int> pts) const;
  int line_id(const std::vector<int>& sorted_pts) const;
  int plane_id(const std::vector<int>& sorted_pts) const;

  /// Sorted ids of every point in the projective span of pts.
  /// Throws PreconditionError if the span contains a non-singular vector.
  std::vector<int> span(std::span<const int> pts) const;
  /// Projective dimension of the span (-1 for the empty set).
  int span_dim(std::span<const int> pts) const;

 private:
  Parts parts_;
  Form form_;
  std::vector<int> code_to_id_;
  std::vector<std::vector<std::pair<int, int>>> neighbor_line_;  // sorted (neighbor, line)
  std::vector<std::vector<int>> lines_through_;
  std::vector<std::vector<int>> planes_through_point_;
  std::vector<std::vector<int>> planes_on_line_;
  std::vector<std::vector<int>> plane_lines_;
  std::vector<PointSet> plane_sets_;
  std::map<std::vector<int>, int> plane_index_;
};

/// Enumerates the totally singular points, lines and planes of the form.
/// Throws DegenerateForm for a degenerate form.
PolarSpace build_polar_space(const FormSpec& spec);

}  // namespace mforge
