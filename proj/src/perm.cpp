#include "mforge/perm.hpp"

#include <deque>
#include <string>
#include <unordered_set>

#include "mforge/errors.hpp"

namespace mforge {

Perm identity_perm(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

bool is_identity(const Perm& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

bool is_bijection(const Perm& p) {
  std::vector<char> hit(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm inverse(const Perm& p) {
  Perm inv(p.size());
  for (int i = 0; i < static_cast<int>(p.size()); ++i) inv[p[i]] = i;
  return inv;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : p) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Perm> group_closure(const std::vector<Perm>& gens, int n, std::size_t cap) {
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> out;
  std::deque<Perm> queue;
  Perm id = identity_perm(n);
  seen.insert(id);
  out.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Perm cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Perm next = compose(g, cur);
      if (seen.insert(next).second) {
        if (out.size() >= cap) throw ClosureCapExceeded("group exceeds cap " + std::to_string(cap));
        out.push_back(next);
        queue.push_back(std::move(next));
      }
    }
  }
  return out;
}

}  // namespace mforge
