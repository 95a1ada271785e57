#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace mforge {

/// Largest carrier dimension we handle (the parabolic quadric lives in a 7-space).
inline constexpr int kMaxDim = 7;

/// Coordinate vector over a prime field; only the first `dim` entries are used.
using Vec = std::array<std::uint8_t, kMaxDim>;

/// Arithmetic in GF(q) for q in {2, 3, 5}, backed by lookup tables.
class PrimeField {
 public:
  /// Throws UnsupportedField unless q is 2, 3 or 5.
  explicit PrimeField(int q);

  int order() const noexcept { return q_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add(a, neg(b)); }
  /// Multiplicative inverse; `a` must be nonzero.
  std::uint8_t inv(std::uint8_t a) const { return inv_[a]; }

  /// Exhaustively checks the field axioms on the tables.
  bool verify_axioms() const;

  /// Scales v so that its first nonzero coordinate is 1. Returns false for the zero vector.
  bool normalize(Vec& v, int dim) const;

  /// Base-q code of the first `dim` coordinates (coordinate 0 most significant).
  std::uint32_t encode(const Vec& v, int dim) const;
  Vec decode(std::uint32_t code, int dim) const;

  Vec scale(const Vec& v, std::uint8_t s, int dim) const;
  Vec axpy(std::uint8_t a, const Vec& x, const Vec& y, int dim) const;  // a*x + y

  /// Row-reduces `rows` in place; returns the rank. Pivot rows come first.
  int row_reduce(std::vector<Vec>& rows, int dim) const;

  /// Basis of {x : M x = 0} for the given row matrix.
  std::vector<Vec> nullspace(std::vector<Vec> rows, int dim) const;

 private:
  int q_;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

}  // namespace mforge
