#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace mforge {

using Perm = std::vector<int>;

Perm identity_perm(int n);
bool is_identity(const Perm& p);
bool is_bijection(const Perm& p);
/// (a*b)(x) = a(b(x)).
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

/// Every element of the group generated by gens, breadth-first. Throws
/// ClosureCapExceeded once more than `cap` elements have been produced.
std::vector<Perm> group_closure(const std::vector<Perm>& gens, int n, std::size_t cap);

/// Orbit of `start` under gens, where act(g, x) returns the image of x.
template <class T>
std::vector<T> orbit(const T& start, const std::vector<Perm>& gens, const std::function<T(const Perm&, const T&)>& act) {
  std::vector<T> out{start};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& g : gens) {
      T img = act(g, out[k]);
      bool seen = false;
      for (const auto& y : out) seen = seen || y == img;
      if (!seen) out.push_back(std::move(img));
    }
  }
  return out;
}

}  // namespace mforge
