#include "doctest.h"
#include "mforge/elation.hpp"
#include "mforge/errors.hpp"
#include "mforge/oracle.hpp"
#include "mforge/verifier.hpp"

using namespace mforge;

namespace {

const PolarSpace& w52() {
  static const PolarSpace g = build_polar_space(FormSpec::standard("w5", 2));
  return g;
}

}  // namespace

TEST_CASE("check_collineation: identity and transpositions") {
  const auto& g = w52();
  CHECK(check_collineation(g, identity_perm(g.num_points())).ok());
  for (auto [a, b] : {std::pair{0, 1}, std::pair{3, 40}, std::pair{10, 62}}) {
    Perm p = identity_perm(g.num_points());
    std::swap(p[a], p[b]);
    const auto c = check_collineation(g, p);
    CHECK_FALSE(c.ok());
    CHECK_FALSE(c.witness.empty());
  }
  Perm dup = identity_perm(g.num_points());
  dup[4] = 5;
  CHECK_FALSE(check_collineation(g, dup).bijective);
}

TEST_CASE("certify rejects an elation of another root") {
  const auto& g = w52();
  const auto ap = apartment_from_frame(g, frame_search(g, {}));
  const auto r = root_of_apartment(ap, RootKind::First, 1, 2);
  const auto P = first_kind_params(g, r);
  Perm sigma;
  for (int mt : P.targets) {
    if (mt != P.m) sigma = extend_first_kind(g, P.d, P.q, P.m, mt).perm;
  }
  REQUIRE_FALSE(sigma.empty());
  CHECK(certify_root_elation(g, sigma, r).pass);
  const auto bad = certify_root_elation(g, sigma, root_of_apartment(ap, RootKind::First, 1, 3));
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.failure.empty());
  CHECK(certify_root_elation(g, identity_perm(g.num_points()), r).pass);
}

TEST_CASE("moufang transitivity and its negative control") {
  const auto& g = w52();
  const auto ap = apartment_from_frame(g, frame_search(g, {}));
  for (auto r : {root_of_apartment(ap, RootKind::First, 1, 2), root_of_apartment(ap, RootKind::Second, 2)}) {
    const auto fam = pointwise_stabilizer_oracle(g, r);
    const auto tr = moufang_transitivity(g, r, fam, 1000);
    CHECK(tr.pass);
    CHECK(tr.apartments == 2);
    CHECK(tr.orbit_size == 2);
    const auto neg = moufang_transitivity(g, r, {identity_perm(g.num_points())}, 1000);
    CHECK_FALSE(neg.pass);
    CHECK(neg.orbit_size == 1);
  }
}

TEST_CASE("group closure cap") {
  Perm cyc(7);
  for (int i = 0; i < 7; ++i) cyc[i] = (i + 1) % 7;
  CHECK(group_closure({cyc}, 7, 7).size() == 7);
  CHECK_THROWS_AS(group_closure({cyc}, 7, 3), ClosureCapExceeded);
}

TEST_CASE("self-projectivity shape checks") {
  const auto& g = w52();
  int b = 0;
  while (!g.opposite(0, b)) ++b;
  int c = 0;
  while (!(g.opposite(b, c) && g.opposite(c, 0) && c != 0)) ++c;
  int d = 0;
  while (!(g.opposite(c, d) && g.opposite(d, 0))) ++d;
  CHECK(verify_self_projectivity(g, {0, b, c, d, 0}).pass);
  CHECK_FALSE(verify_self_projectivity(g, {0, b, c, 0}).pass);
  CHECK_FALSE(verify_self_projectivity(g, {0, b, c, d, b}).pass);
  CHECK_FALSE(verify_self_projectivity(g, {0, b, 0}).pass);
}

TEST_CASE("fixpoint corollary is a strengthening at q = 2") {
  const auto& g = w52();
  const auto ap = apartment_from_frame(g, frame_search(g, {}));
  const auto r = root_of_apartment(ap, RootKind::First, 1, 2);
  const auto relaxed = pointwise_stabilizer_oracle(g, r, false);
  int violators = 0;
  for (const auto& p : relaxed) violators += verify_fixpoint_corollary(g, p, r).pass ? 0 : 1;
  CHECK(violators > 0);
  for (const auto& p : pointwise_stabilizer_oracle(g, r)) CHECK(verify_fixpoint_corollary(g, p, r).pass);
}

TEST_CASE("every nontrivial residual root elation is realized by a recipe") {
  const auto& g = w52();
  int b = 0;
  while (!g.opposite(0, b)) ++b;
  const auto gq = gq_from_opposite(g, 0, b);
  const auto aps = gq_apartments(gq.geom);
  const auto roots = gq_roots(aps, gq.geom);
  int kinds[2] = {0, 0};
  for (std::size_t k = 0; k < roots.size(); k += 9) {
    const auto rr = realize_all_residual_elations(g, gq, aps, roots[k]);
    CHECK(rr.pass);
    CHECK(rr.nontrivial == 1);
    CHECK(rr.realized == 1);
    ++kinds[roots[k].kind == GQRootKind::First ? 0 : 1];
  }
  CHECK(kinds[0] > 0);
  CHECK(kinds[1] > 0);
}
