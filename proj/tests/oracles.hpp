#pragma once

// Reference computations done straight from the forms, sharing no code with the library.

#include <string>
#include <vector>

namespace oracle {

inline int mod(long a, int q) { return static_cast<int>(((a % q) + q) % q); }

// Gram antidiag(1,1,1,-1,-1,-1) or the polarization of x0^2 + x1x2 + x3x4 + x5x6.
inline int bilinear(const std::string& space, int q, const std::vector<int>& x, const std::vector<int>& y) {
  long s = 0;
  if (space == "w5") {
    for (int i = 0; i < 3; ++i) s += x[i] * y[5 - i] - x[5 - i] * y[i];
  } else {
    s = 2L * x[0] * y[0];
    for (int i = 1; i < 7; i += 2) s += x[i] * y[i + 1] + x[i + 1] * y[i];
  }
  return mod(s, q);
}

inline int quadratic(const std::vector<int>& x, int q) {
  return mod(1L * x[0] * x[0] + x[1] * x[2] + x[3] * x[4] + x[5] * x[6], q);
}

// Normalized singular vectors (first nonzero coordinate 1), lexicographic.
inline std::vector<std::vector<int>> singular_points(const std::string& space, int q) {
  const int n = space == "w5" ? 6 : 7;
  std::vector<std::vector<int>> out;
  std::vector<int> v(n, 0);
  long total = 1;
  for (int i = 0; i < n; ++i) total *= q;
  for (long code = 1; code < total; ++code) {
    long c = code;
    for (int i = n - 1; i >= 0; --i) {
      v[i] = static_cast<int>(c % q);
      c /= q;
    }
    int lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    if (space == "q6" && quadratic(v, q) != 0) continue;
    out.push_back(v);
  }
  return out;
}

}  // namespace oracle
