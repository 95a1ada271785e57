#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mforge/polar_space.hpp"
#include "mforge/report.hpp"

namespace mforge {

struct RunConfig {
  std::string space = "w5";
  int q = 2;
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::size_t cap = 1000000;  // group closure cap
  int jobs = 0;               // 0: hardware concurrency
  int samples = 100;          // sampled GQ instances per kind when not exhaustive
  int roots = 12;             // rank-3 roots per kind for the extension suites
  bool full = false;          // exhaustive GQ instances at q > 2
  std::string format = "text";
  std::string out;    // report/1 JSON lines, empty for none
  std::string cache;  // geom/1 cache path, empty for none

  nlohmann::json to_json() const;
};

/// Throws PreconditionError on an invalid configuration.
void validate_config(const RunConfig& c);
const std::vector<std::string>& suite_names();

/// Runs cfg.suite (or every suite for "all") against g, appending to sink.
void run_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink);

void run_axioms_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink);
void run_gq_elations_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink);
void run_extensions_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink);
void run_moufang_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink);
void run_corollaries_suite(const PolarSpace& g, const RunConfig& cfg, ReportSink& sink);
void run_h3_suite(const RunConfig& cfg, ReportSink& sink);

}  // namespace mforge
