#include "mforge/form.hpp"

#include <cmath>

#include "mforge/errors.hpp"

namespace mforge {

std::string FormSpec::space_name() const {
  return kind == FormKind::Alternating ? "w5" : "q6";
}

std::string FormSpec::kind_name() const {
  return kind == FormKind::Alternating ? "alternating" : "quadratic-parabolic";
}

FormSpec FormSpec::standard_alternating(int q) {
  FormSpec s;
  s.kind = FormKind::Alternating;
  s.q = q;
  s.coeffs.assign(6, std::vector<int>(6, 0));
  for (int i = 0; i < 6; ++i) s.coeffs[i][5 - i] = i < 3 ? 1 : q - 1;
  return s;
}

FormSpec FormSpec::standard_parabolic(int q) {
  FormSpec s;
  s.kind = FormKind::Parabolic;
  s.q = q;
  s.coeffs.assign(7, std::vector<int>(7, 0));
  s.coeffs[0][0] = 1;
  s.coeffs[1][2] = 1;
  s.coeffs[3][4] = 1;
  s.coeffs[5][6] = 1;
  return s;
}

FormSpec FormSpec::standard(const std::string& space, int q) {
  if (space == "w5") return standard_alternating(q);
  if (space == "q6") return standard_parabolic(q);
  throw PreconditionError("unknown space '" + space + "' (expected w5 or q6)");
}

Form::Form(FormSpec spec) : spec_(std::move(spec)), field_(spec_.q) {
  const int n = spec_.dim();
  if (static_cast<int>(spec_.coeffs.size()) != n) {
    throw PreconditionError("form coefficient matrix has wrong size");
  }
  for (const auto& row : spec_.coeffs) {
    if (static_cast<int>(row.size()) != n) throw PreconditionError("form coefficient row has wrong size");
  }
  auto red = [&](int v) { return static_cast<std::uint8_t>(((v % spec_.q) + spec_.q) % spec_.q); };
  gram_.assign(n, std::vector<std::uint8_t>(n, 0));
  if (spec_.kind == FormKind::Alternating) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) gram_[i][j] = red(spec_.coeffs[i][j]);
    }
    for (int i = 0; i < n; ++i) {
      if (gram_[i][i] != 0) throw DegenerateForm("alternating Gram matrix has a nonzero diagonal entry");
      for (int j = 0; j < n; ++j) {
        if (gram_[i][j] != field_.neg(gram_[j][i])) {
          throw DegenerateForm("Gram matrix is not antisymmetric");
        }
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const std::uint8_t c = red(spec_.coeffs[i][j]);
        if (i == j) {
          gram_[i][i] = field_.add(c, c);
        } else {
          gram_[i][j] = c;
          gram_[j][i] = c;
        }
      }
    }
  }
  if (has_singular_radical()) throw DegenerateForm("the form has a nontrivial singular radical");
}

std::uint8_t Form::bilinear(const Vec& x, const Vec& y) const {
  const int n = dim();
  std::uint8_t acc = 0;
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j] == 0 || gram_[i][j] == 0) continue;
      acc = field_.add(acc, field_.mul(field_.mul(x[i], gram_[i][j]), y[j]));
    }
  }
  return acc;
}

std::uint8_t Form::quadratic(const Vec& x) const {
  if (spec_.kind == FormKind::Alternating) return 0;
  const int n = dim();
  std::uint8_t acc = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const int c = ((spec_.coeffs[i][j] % spec_.q) + spec_.q) % spec_.q;
      if (c == 0 || x[i] == 0 || x[j] == 0) continue;
      acc = field_.add(acc, field_.mul(static_cast<std::uint8_t>(c), field_.mul(x[i], x[j])));
    }
  }
  return acc;
}

bool Form::has_singular_radical() const {
  const int n = dim();
  std::vector<Vec> rows;
  for (int i = 0; i < n; ++i) {
    Vec r{};
    for (int j = 0; j < n; ++j) r[j] = gram_[i][j];
    rows.push_back(r);
  }
  const auto basis = field_.nullspace(rows, n);
  if (basis.empty()) return false;
  // Enumerate the radical (tiny) and look for a nonzero singular vector.
  const int k = static_cast<int>(basis.size());
  const int q = spec_.q;
  int total = 1;
  for (int i = 0; i < k; ++i) total *= q;
  for (int code = 1; code < total; ++code) {
    Vec v{};
    int c = code;
    for (int i = 0; i < k; ++i) {
      v = field_.axpy(static_cast<std::uint8_t>(c % q), basis[i], v, n);
      c /= q;
    }
    if (is_singular(v)) return true;
  }
  return false;
}

}  // namespace mforge
