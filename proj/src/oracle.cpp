#include "mforge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mforge/verifier.hpp"

namespace mforge {

namespace {

using Mat = std::vector<Vec>;  // rows

// Inverse of the matrix whose columns are cols; empty if singular.
Mat inverse_of_columns(const PrimeField& f, const Mat& cols, int dim) {
  std::vector<std::vector<std::uint8_t>> a(dim, std::vector<std::uint8_t>(2 * dim, 0));
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a[r][c] = cols[c][r];
    a[r][dim + r] = 1;
  }
  for (int c = 0; c < dim; ++c) {
    int piv = -1;
    for (int r = c; r < dim && piv < 0; ++r) {
      if (a[r][c]) piv = r;
    }
    if (piv < 0) return {};
    std::swap(a[piv], a[c]);
    const auto s = f.inv(a[c][c]);
    for (auto& v : a[c]) v = f.mul(v, s);
    for (int r = 0; r < dim; ++r) {
      if (r == c || !a[r][c]) continue;
      const auto t = a[r][c];
      for (int k = 0; k < 2 * dim; ++k) a[r][k] = f.sub(a[r][k], f.mul(t, a[c][k]));
    }
  }
  Mat inv(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) inv[r][c] = a[r][dim + c];
  }
  return inv;
}

Vec mat_vec(const PrimeField& f, const Mat& rows, const Vec& x, int dim) {
  Vec y{};
  for (int r = 0; r < dim; ++r) {
    std::uint8_t s = 0;
    for (int c = 0; c < dim; ++c) s = f.add(s, f.mul(rows[r][c], x[c]));
    y[r] = s;
  }
  return y;
}

}  // namespace

std::vector<Perm> pointwise_stabilizer_oracle(const PolarSpace& g, const Root& r, bool certified,
                                              OracleStats* stats) {
  const PrimeField& f = g.field();
  const Form& form = g.form();
  const int dim = g.dim();
  const int q = f.order();

  Mat basis;
  std::vector<char> fixed;
  for (int s = 0; s < 6; ++s) {
    basis.push_back(g.vec(r.apartment.frame.pts[s]));
    bool in = false;
    for (const auto& e : r.inside) in = in || (e.dim == 0 && e.id == r.apartment.frame.pts[s]);
    fixed.push_back(in);
  }
  if (dim == 7) {
    Mat rows;
    for (int s = 0; s < 6; ++s) {
      Vec row{};
      for (int k = 0; k < dim; ++k) {
        Vec unit{};
        unit[k] = 1;
        row[k] = form.bilinear(basis[s], unit);
      }
      rows.push_back(row);
    }
    basis.push_back(f.nullspace(rows, dim).front());
    fixed.push_back(0);
  }
  const Mat e_inv = inverse_of_columns(f, basis, dim);

  std::vector<int> order;
  for (int s = 0; s < dim; ++s) {
    if (fixed[s]) order.push_back(s);
  }
  for (int s = 0; s < dim; ++s) {
    if (!fixed[s]) order.push_back(s);
  }

  std::vector<Vec> all_vectors;
  for (std::uint32_t code = 1; code < static_cast<std::uint32_t>(std::pow(q, dim)); ++code) {
    all_vectors.push_back(f.decode(code, dim));
  }

  std::set<Perm> found;
  OracleStats local;
  Mat img(dim);
  std::vector<char> assigned(dim, 0);
  auto consistent = [&](int s, const Vec& v) {
    if (form.quadratic(v) != form.quadratic(basis[s])) return false;
    for (int t = 0; t < dim; ++t) {
      if (assigned[t] && form.bilinear(v, img[t]) != form.bilinear(basis[s], basis[t])) return false;
    }
    return true;
  };
  auto finish = [&]() {
    Mat cols = img;
    if (inverse_of_columns(f, cols, dim).empty()) return;
    // G = [img] · E^{-1}; x ↦ G x.
    Mat G(dim);
    for (int rr = 0; rr < dim; ++rr) {
      for (int c = 0; c < dim; ++c) {
        std::uint8_t s = 0;
        for (int k = 0; k < dim; ++k) s = f.add(s, f.mul(img[k][rr], e_inv[k][c]));
        G[rr][c] = s;
      }
    }
    Perm perm(g.num_points());
    for (int x = 0; x < g.num_points(); ++x) perm[x] = g.point_id(mat_vec(f, G, g.vec(x), dim));
    ++local.candidates;
    if (certified && !certify_root_elation(g, perm, r).pass) {
      ++local.rejected;
      return;
    }
    found.insert(perm);
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == order.size()) {
      finish();
      return;
    }
    const int s = order[k];
    auto try_vec = [&](const Vec& v) {
      if (!consistent(s, v)) return;
      img[s] = v;
      assigned[s] = 1;
      self(self, k + 1);
      assigned[s] = 0;
    };
    if (fixed[s]) {
      // Overall scalar fixed by the first basis vector.
      for (int lam = 1; lam < (k == 0 ? 2 : q); ++lam) try_vec(f.scale(basis[s], static_cast<std::uint8_t>(lam), dim));
    } else {
      for (const auto& v : all_vectors) try_vec(v);
    }
  };
  rec(rec, 0);
  if (stats) *stats = local;
  return {found.begin(), found.end()};
}

std::vector<Perm> gq_root_elation_oracle(const PointLineGeometry& gq, const std::vector<GQApartment>& apartments,
                                         const GQRoot& r) {
  const int n = gq.num_points;
  std::vector<std::vector<int>> domain(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) domain[x].push_back(y);
  }
  auto restrict_to = [&](int x, const std::vector<int>& allowed) {
    std::vector<int> out;
    for (int y : domain[x]) {
      if (std::find(allowed.begin(), allowed.end(), y) != allowed.end()) out.push_back(y);
    }
    domain[x] = out;
  };
  auto is_line = [&](int k) { return (r.kind == GQRootKind::First) == (k % 2 == 0); };
  for (int k = 1; k <= 3; ++k) {
    const int e = r.path[k];
    if (is_line(k)) {
      for (int x : gq.lines[e]) restrict_to(x, {x});
    } else {
      restrict_to(e, {e});
      for (int l : gq.point_lines[e]) {
        for (int x : gq.lines[l]) restrict_to(x, gq.lines[l]);
      }
    }
  }

  // Most constrained first, then by adjacency to assigned points.
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  for (int it = 0; it < n; ++it) {
    int best = -1;
    long best_key = 0;
    for (int x = 0; x < n; ++x) {
      if (placed[x]) continue;
      long links = 0;
      for (int y : order) links += gq.collinear[x][y] ? 1 : 0;
      const long key = -static_cast<long>(domain[x].size()) * 1000 + links;
      if (best < 0 || key > best_key) {
        best = x;
        best_key = key;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }

  std::set<Perm> found;
  Perm sigma(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      if (certify_gq_root_elation(gq, apartments, sigma, r).pass) found.insert(sigma);
      return;
    }
    const int x = order[k];
    for (int y : domain[x]) {
      if (used[y]) continue;
      bool ok = true;
      for (int t = 0; t < k && ok; ++t) {
        const int z = order[t];
        ok = gq.collinear[x][z] == gq.collinear[y][sigma[z]];
      }
      if (!ok) continue;
      sigma[x] = y;
      used[y] = 1;
      self(self, k + 1);
      used[y] = 0;
      sigma[x] = -1;
    }
  };
  rec(rec, 0);
  return {found.begin(), found.end()};
}

}  // namespace mforge
