#include "doctest.h"
#include "mforge/elation.hpp"
#include "mforge/errors.hpp"
#include "mforge/oracle.hpp"
#include "mforge/verifier.hpp"
#include "oracles.hpp"

using namespace mforge;

namespace {

std::vector<int> ints(const PolarSpace& g, int p) {
  std::vector<int> v(g.dim());
  for (int i = 0; i < g.dim(); ++i) v[i] = g.vec(p)[i];
  return v;
}

// sigma preserves orthogonality of every pair, evaluated with the oracle form.
bool preserves_form_orthogonality(const PolarSpace& g, const std::string& space, const Perm& sigma) {
  for (int a = 0; a < g.num_points(); ++a) {
    for (int b = a + 1; b < g.num_points(); ++b) {
      const bool before = oracle::bilinear(space, g.q(), ints(g, a), ints(g, b)) == 0;
      const bool after = oracle::bilinear(space, g.q(), ints(g, sigma[a]), ints(g, sigma[b])) == 0;
      if (before != after) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("eta copies agree and satisfy its properties") {
  for (auto [space, q] : {std::pair{"w5", 2}, std::pair{"w5", 3}, std::pair{"q6", 2}}) {
    const auto g = build_polar_space(FormSpec::standard(space, q));
    const auto ap = apartment_from_frame(g, frame_search(g, {}));
    const auto P = first_kind_params(g, root_of_apartment(ap, RootKind::First, 1, 2));
    for (int mt : P.targets) {
      const auto eta = build_eta(g, P.d, P.q, P.m, mt);
      CHECK(eta.star_mismatches == 0);
      CHECK(eta.back_mismatches == 0);
      CHECK(eta.star_checks > 0);
      CHECK(check_eta(g, eta).ok());
      CHECK(eta(P.m) == mt);
    }
  }
}

TEST_CASE("eta preconditions") {
  const auto g = build_polar_space(FormSpec::standard("w5", 2));
  const auto ap = apartment_from_frame(g, frame_search(g, {}));
  const auto P = first_kind_params(g, root_of_apartment(ap, RootKind::First, 1, 2));
  CHECK_THROWS_AS(build_eta(g, P.d, P.q, P.q, P.q), PreconditionError);
  int far = 0;
  while (g.collinear(far, P.d) || g.collinear(far, P.q)) ++far;
  CHECK_THROWS_AS(verify_copy_coherence(g, build_eta(g, P.d, P.q, P.m, P.targets.back()), far, far), PreconditionError);
}

TEST_CASE("first-kind extension is an isometry-induced root elation") {
  for (auto [space, q] : {std::pair{"w5", 2}, std::pair{"q6", 2}, std::pair{"w5", 3}}) {
    const auto g = build_polar_space(FormSpec::standard(space, q));
    const auto ap = apartment_from_frame(g, frame_search(g, {}));
    const auto r = root_of_apartment(ap, RootKind::First, 1, -2);
    const auto P = first_kind_params(g, r);
    const auto oracle_family = pointwise_stabilizer_oracle(g, r);
    CHECK(oracle_family.size() == std::size_t(q));
    for (int mt : P.targets) {
      FirstKindOptions opt;
      opt.all_host_pairs = q == 2;
      const auto ext = extend_first_kind(g, P.d, P.q, P.m, mt, opt);
      CHECK(ext.mismatches == 0);
      CHECK(ext.perm[P.m] == mt);
      CHECK(preserves_form_orthogonality(g, space, ext.perm));
      CHECK(check_collineation(g, ext.perm).ok());
      CHECK(certify_root_elation(g, ext.perm, r).pass);
      CHECK(verify_fixpoint_corollary(g, ext.perm, r).pass);
      CHECK(std::count(oracle_family.begin(), oracle_family.end(), ext.perm) == 1);
    }
  }
}

TEST_CASE("second-kind extension") {
  for (auto [space, q] : {std::pair{"w5", 2}, std::pair{"q6", 3}}) {
    const auto g = build_polar_space(FormSpec::standard(space, q));
    const auto ap = apartment_from_frame(g, frame_search(g, {}));
    const auto r = root_of_apartment(ap, RootKind::Second, -3);
    const auto S = second_kind_params(g, r);
    const auto oracle_family = pointwise_stabilizer_oracle(g, r);
    for (int pt : S.targets) {
      auto c = S.config;
      c.p_t = pt;
      const auto ext = extend_second_kind(g, c);
      CHECK(ext.mismatches == 0);
      CHECK(ext.perm[c.p] == pt);
      CHECK(preserves_form_orthogonality(g, space, ext.perm));
      for (int x : g.plane_points(c.alpha)) CHECK(ext.perm[x] == x);
      for (int x : g.plane_points(c.beta)) CHECK(ext.perm[x] == x);
      CHECK(certify_root_elation(g, ext.perm, r).pass);
      CHECK(std::count(oracle_family.begin(), oracle_family.end(), ext.perm) == 1);
    }
  }
}

TEST_CASE("swapped target gives the inverse") {
  const auto g = build_polar_space(FormSpec::standard("w5", 3));
  const auto ap = apartment_from_frame(g, frame_search(g, {}));
  const auto P = first_kind_params(g, root_of_apartment(ap, RootKind::First, 2, 3));
  for (int mt : P.targets) {
    const auto a = extend_first_kind(g, P.d, P.q, P.m, mt);
    const auto b = extend_first_kind(g, P.d, P.q, mt, P.m);
    CHECK(is_identity(compose(a.perm, b.perm)));
  }
}
