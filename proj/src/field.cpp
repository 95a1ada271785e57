#include "mforge/field.hpp"

#include <string>

#include "mforge/errors.hpp"

namespace mforge {

PrimeField::PrimeField(int q) : q_(q) {
  if (q != 2 && q != 3 && q != 5) {
    throw UnsupportedField("field order must be 2, 3 or 5, got " + std::to_string(q));
  }
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    neg_[a] = static_cast<std::uint8_t>((q - a) % q);
    for (int b = 0; b < q; ++b) {
      add_[a * q + b] = static_cast<std::uint8_t>((a + b) % q);
      mul_[a * q + b] = static_cast<std::uint8_t>((a * b) % q);
      if ((a * b) % q == 1) inv_[a] = static_cast<std::uint8_t>(b);
    }
  }
}

bool PrimeField::verify_axioms() const {
  for (int a = 0; a < q_; ++a) {
    auto ua = static_cast<std::uint8_t>(a);
    if (add(ua, 0) != ua || mul(ua, 1) != ua) return false;
    if (add(ua, neg(ua)) != 0) return false;
    if (a != 0 && mul(ua, inv(ua)) != 1) return false;
    for (int b = 0; b < q_; ++b) {
      auto ub = static_cast<std::uint8_t>(b);
      if (add(ua, ub) != add(ub, ua) || mul(ua, ub) != mul(ub, ua)) return false;
      for (int c = 0; c < q_; ++c) {
        auto uc = static_cast<std::uint8_t>(c);
        if (add(add(ua, ub), uc) != add(ua, add(ub, uc))) return false;
        if (mul(mul(ua, ub), uc) != mul(ua, mul(ub, uc))) return false;
        if (mul(ua, add(ub, uc)) != add(mul(ua, ub), mul(ua, uc))) return false;
      }
    }
  }
  return true;
}

bool PrimeField::normalize(Vec& v, int dim) const {
  for (int i = 0; i < dim; ++i) {
    if (v[i] != 0) {
      v = scale(v, inv(v[i]), dim);
      return true;
    }
  }
  return false;
}

std::uint32_t PrimeField::encode(const Vec& v, int dim) const {
  std::uint32_t code = 0;
  for (int i = 0; i < dim; ++i) code = code * static_cast<std::uint32_t>(q_) + v[i];
  return code;
}

Vec PrimeField::decode(std::uint32_t code, int dim) const {
  Vec v{};
  for (int i = dim - 1; i >= 0; --i) {
    v[i] = static_cast<std::uint8_t>(code % static_cast<std::uint32_t>(q_));
    code /= static_cast<std::uint32_t>(q_);
  }
  return v;
}

Vec PrimeField::scale(const Vec& v, std::uint8_t s, int dim) const {
  Vec out{};
  for (int i = 0; i < dim; ++i) out[i] = mul(v[i], s);
  return out;
}

Vec PrimeField::axpy(std::uint8_t a, const Vec& x, const Vec& y, int dim) const {
  Vec out{};
  for (int i = 0; i < dim; ++i) out[i] = add(mul(a, x[i]), y[i]);
  return out;
}

int PrimeField::row_reduce(std::vector<Vec>& rows, int dim) const {
  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    rows[rank] = scale(rows[rank], inv(rows[rank][col]), dim);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != rank && rows[r][col] != 0) {
        rows[r] = axpy(neg(rows[r][col]), rows[rank], rows[r], dim);
      }
    }
    ++rank;
  }
  return rank;
}

std::vector<Vec> PrimeField::nullspace(std::vector<Vec> rows, int dim) const {
  const int rank = row_reduce(rows, dim);
  std::vector<int> pivot_col(rank, -1);
  std::vector<bool> is_pivot(dim, false);
  for (int r = 0; r < rank; ++r) {
    for (int c = 0; c < dim; ++c) {
      if (rows[r][c] != 0) {
        pivot_col[r] = c;
        is_pivot[c] = true;
        break;
      }
    }
  }
  std::vector<Vec> basis;
  for (int free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    Vec v{};
    v[free] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = neg(rows[r][free]);
    basis.push_back(v);
  }
  return basis;
}

}  // namespace mforge
