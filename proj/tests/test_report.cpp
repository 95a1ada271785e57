#include <sstream>

#include "doctest.h"
#include "mforge/errors.hpp"
#include "mforge/report.hpp"
#include "mforge/suites.hpp"

using namespace mforge;

TEST_CASE("report/1 round trip") {
  auto r = make_report("gq.first-kind", "root 0001", false, {4, 5}, {{"n", 3}}, "moved");
  r.wall_ms = 1.25;
  const auto back = VerificationReport::from_json(r.to_json());
  CHECK(back.claim == r.claim);
  CHECK(back.result == Outcome::Fail);
  CHECK(back.witness == std::vector<int>{4, 5});
  CHECK(back.counts["n"] == 3);
  CHECK(back.detail == "moved");
}

TEST_CASE("failures always carry a witness") {
  CHECK_FALSE(make_report("c", "i", false).witness.empty());
  CHECK(make_report("c", "i", true, {1, 2}).witness.empty());
  auto j = make_report("c", "i", false).to_json();
  j["witness"] = nlohmann::json::array();
  CHECK_THROWS_AS(VerificationReport::from_json(j), CacheError);
}

TEST_CASE("sink sorts by claim then instance and streams") {
  std::ostringstream os;
  ReportSink sink(&os);
  sink.add(make_report("b", "2", true));
  sink.add(make_report("a", "9", true));
  sink.add(make_report("b", "1", false, {7}));
  sink.flush();
  REQUIRE(sink.reports().size() == 3);
  CHECK(sink.reports()[0].claim == "a");
  CHECK(sink.reports()[1].instance == "1");
  CHECK(sink.failures() == 1);
  std::istringstream is(os.str());
  const auto back = read_reports(is);
  CHECK(back.size() == 3);
  CHECK(sink.summary_text().find("FAILURES: 1") != std::string::npos);
  std::istringstream bad("{\"schema\":\"report/1\"\nnot json\n");
  CHECK_THROWS_AS(read_reports(bad), CacheError);
}

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(validate_config(c));
  c.q = 7;
  CHECK_THROWS_AS(validate_config(c), PreconditionError);
  c.q = 3;
  c.suite = "everything";
  CHECK_THROWS_AS(validate_config(c), PreconditionError);
  c.suite = "h3";
  c.space = "h3";
  CHECK_THROWS_AS(validate_config(c), PreconditionError);
}

TEST_CASE("h3 suite is deterministic modulo timing") {
  auto run = [] {
    ReportSink sink;
    run_h3_suite(RunConfig{}, sink);
    std::string s;
    for (auto r : sink.reports()) {
      r.wall_ms = 0;
      s += r.to_json().dump() + "\n";
    }
    return s;
  };
  CHECK(run() == run());
}
