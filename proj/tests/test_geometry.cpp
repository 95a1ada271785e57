#include <map>

#include "doctest.h"
#include "json.hpp"
#include "mforge/axioms.hpp"
#include "mforge/errors.hpp"
#include "mforge/geometry_io.hpp"
#include "mforge/polar_space.hpp"
#include "oracles.hpp"

using namespace mforge;

namespace {

std::vector<int> as_ints(const PolarSpace& g, int p) {
  std::vector<int> v(g.dim());
  for (int i = 0; i < g.dim(); ++i) v[i] = g.vec(p)[i];
  return v;
}

}  // namespace

TEST_CASE("W(5,2) counts agree with a brute-force enumeration") {
  const auto g = build_polar_space(FormSpec::standard("w5", 2));
  const auto pts = oracle::singular_points("w5", 2);
  REQUIRE(g.num_points() == static_cast<int>(pts.size()));
  CHECK(pts.size() == 63);

  // Over GF(2) a line has 3 points and 3 pairs; a plane has 7 points and 28 unordered spanning triples.
  long pairs = 0, triples = 0;
  const int n = static_cast<int>(pts.size());
  auto orth = [&](int a, int b) { return oracle::bilinear("w5", 2, pts[a], pts[b]) == 0; };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!orth(a, b)) continue;
      ++pairs;
      for (int c = b + 1; c < n; ++c) {
        if (!orth(a, c) || !orth(b, c)) continue;
        bool dependent = true;
        for (int i = 0; i < 6; ++i) dependent = dependent && (pts[a][i] ^ pts[b][i]) == pts[c][i];
        if (!dependent) ++triples;
      }
    }
  }
  CHECK(g.num_lines() == pairs / 3);
  CHECK(g.num_planes() == triples / 28);
  CHECK(pairs / 3 == 315);
  CHECK(triples / 28 == 135);
}

TEST_CASE("point ids follow the oracle's lexicographic order") {
  for (auto [space, q] : {std::pair{"w5", 3}, std::pair{"q6", 3}}) {
    const auto g = build_polar_space(FormSpec::standard(space, q));
    const auto pts = oracle::singular_points(space, q);
    REQUIRE(g.num_points() == static_cast<int>(pts.size()));
    for (int p = 0; p < g.num_points(); p += 7) CHECK(as_ints(g, p) == pts[p]);
  }
}

TEST_CASE("collinearity matches the form") {
  const auto g = build_polar_space(FormSpec::standard("q6", 3));
  const auto pts = oracle::singular_points("q6", 3);
  for (int a = 0; a < g.num_points(); a += 11) {
    for (int b = 0; b < g.num_points(); ++b) {
      CHECK(g.collinear(a, b) == (oracle::bilinear("q6", 3, pts[a], pts[b]) == 0));
    }
  }
}

TEST_CASE("axiom check accepts the standard spaces") {
  for (auto [space, q] : {std::pair{"w5", 2}, std::pair{"w5", 3}, std::pair{"q6", 3}}) {
    const auto g = build_polar_space(FormSpec::standard(space, q));
    CHECK_NOTHROW(check_form_agreement(g));
    const auto st = axiom_check(g);
    CHECK(st.min_planes_per_line == q + 1);
  }
}

TEST_CASE("axiom check rejects a geometry with a missing plane") {
  const auto g = build_polar_space(FormSpec::standard("w5", 2));
  auto parts = g.parts();
  parts.planes.erase(parts.planes.begin() + 17);
  const PolarSpace broken(parts);
  CHECK_THROWS_AS(axiom_check(broken), AxiomViolation);
}

TEST_CASE("unsupported field orders") {
  CHECK_THROWS_AS(build_polar_space(FormSpec::standard("w5", 7)), UnsupportedField);
  CHECK_THROWS_AS(build_polar_space(FormSpec::standard("w5", 4)), UnsupportedField);
}

TEST_CASE("geom/1 cache is byte-stable and validated") {
  const auto g = build_polar_space(FormSpec::standard("w5", 2));
  const std::string doc = geometry_to_json(g);
  CHECK(geometry_to_json(build_polar_space(FormSpec::standard("w5", 2))) == doc);
  const auto back = geometry_from_json(doc);
  CHECK(geometry_to_json(back) == doc);
  CHECK(back.num_planes() == 135);

  CHECK_THROWS_AS(geometry_from_json(doc.substr(0, doc.size() / 2)), CacheError);
  auto j = nlohmann::json::parse(doc);
  j["lines"][5][0] = j["lines"][5][1];
  CHECK_THROWS_AS(geometry_from_json(j.dump()), CacheError);
  j = nlohmann::json::parse(doc);
  j["schema"] = "geom/0";
  CHECK_THROWS_AS(geometry_from_json(j.dump()), CacheError);
}
