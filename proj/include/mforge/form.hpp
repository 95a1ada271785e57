#pragma once

#include <string>
#include <vector>

#include "mforge/field.hpp"

namespace mforge {

enum class FormKind { Alternating, Parabolic };

/// A nondegenerate form whose totally singular subspaces make up a rank-3 polar space.
///
/// Alternating forms are given by a 6x6 Gram matrix. Quadratic forms on the
/// 7-space are given by coefficients c[i][j] (i <= j) with
/// Q(x) = sum_{i<=j} c[i][j] x_i x_j; entries with i > j are ignored.
struct FormSpec {
  FormKind kind = FormKind::Alternating;
  int q = 2;
  std::vector<std::vector<int>> coeffs;

  int dim() const { return kind == FormKind::Alternating ? 6 : 7; }
  /// "w5" or "q6", matching the CLI space names.
  std::string space_name() const;
  /// "alternating" or "quadratic-parabolic".
  std::string kind_name() const;

  /// Gram matrix antidiagonal(1,1,1,-1,-1,-1).
  static FormSpec standard_alternating(int q);
  /// x0^2 + x1 x2 + x3 x4 + x5 x6.
  static FormSpec standard_parabolic(int q);
  static FormSpec standard(const std::string& space, int q);
};

/// Evaluates a FormSpec over its field.
class Form {
 public:
  explicit Form(FormSpec spec);

  const FormSpec& spec() const { return spec_; }
  const PrimeField& field() const { return field_; }
  int dim() const { return spec_.dim(); }

  /// Gram form for the alternating case, polarization for the quadric.
  std::uint8_t bilinear(const Vec& x, const Vec& y) const;
  /// Quadratic form value; identically zero for the alternating case.
  std::uint8_t quadratic(const Vec& x) const;
  bool is_singular(const Vec& x) const { return quadratic(x) == 0; }

  /// True when the radical of the bilinear form holds a nonzero singular
  /// vector, i.e. the form is degenerate.
  bool has_singular_radical() const;

 private:
  FormSpec spec_;
  PrimeField field_;
  std::vector<std::vector<std::uint8_t>> gram_;  // bilinear matrix in both cases
};

}  // namespace mforge
