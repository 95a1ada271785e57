#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "mforge/errors.hpp"
#include "mforge/geometry_io.hpp"
#include "mforge/polar_space.hpp"
#include "mforge/report.hpp"
#include "mforge/suites.hpp"

using namespace mforge;

namespace {

constexpr int kPass = 0;
constexpr int kClaimFailure = 1;
constexpr int kConfigError = 2;

void add_geometry_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--space", cfg.space, "w5 or q6")->envname("MFORGE_SPACE")->capture_default_str();
  cmd->add_option("--q", cfg.q, "field order (2, 3 or 5)")->envname("MFORGE_Q")->capture_default_str();
}

// Loads the cache when present, otherwise builds and (if a path is given) writes it.
PolarSpace obtain_geometry(const RunConfig& cfg) {
  if (!cfg.cache.empty() && std::filesystem::exists(cfg.cache)) {
    PolarSpace g = load_geometry(cfg.cache);
    if (g.parts().form.space_name() != cfg.space || g.q() != cfg.q) {
      throw CacheError("cache " + cfg.cache + " holds " + g.parts().form.space_name() + " q=" + std::to_string(g.q()));
    }
    return g;
  }
  PolarSpace g = build_polar_space(FormSpec::standard(cfg.space, cfg.q));
  if (!cfg.cache.empty()) save_geometry(g, cfg.cache);
  return g;
}

int cmd_build(RunConfig cfg) {
  if (cfg.out.empty()) cfg.out = "geom-" + cfg.space + "-q" + std::to_string(cfg.q) + ".json";
  const PolarSpace g = build_polar_space(FormSpec::standard(cfg.space, cfg.q));
  save_geometry(g, cfg.out);
  std::cout << cfg.out << ": " << g.num_points() << " points, " << g.num_lines() << " lines, " << g.num_planes()
            << " planes\n";
  return kPass;
}

void print_summary(const ReportSink& sink, const std::string& format) {
  if (format == "json") std::cout << sink.summary_json().dump(2) << '\n';
  else std::cout << sink.summary_text();
}

int cmd_verify(const RunConfig& cfg) {
  std::unique_ptr<std::ofstream> file;
  if (!cfg.out.empty()) {
    file = std::make_unique<std::ofstream>(cfg.out);
    if (!*file) throw PreconditionError("cannot write " + cfg.out);
  }
  ReportSink sink(file.get());
  if (cfg.suite == "h3") {
    run_h3_suite(cfg, sink);
  } else {
    const PolarSpace g = obtain_geometry(cfg);
    run_suite(g, cfg, sink);
  }
  print_summary(sink, cfg.format);
  return sink.failures() == 0 ? kPass : kClaimFailure;
}

int cmd_report(const std::string& in, const std::string& format) {
  std::ifstream is(in);
  if (!is) throw PreconditionError("cannot read " + in);
  const auto reports = read_reports(is);
  int fails = 0;
  for (const auto& r : reports) fails += r.result == Outcome::Fail ? 1 : 0;
  if (format == "json") {
    for (const auto& r : reports) std::cout << r.to_json().dump() << '\n';
  } else {
    std::cout << summarize(reports);
  }
  return fails == 0 ? kPass : kClaimFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mforge: root elation verification for rank-3 polar spaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string report_in;

  auto* build = app.add_subcommand("build", "write the geom/1 cache of a polar space");
  add_geometry_flags(build, cfg);
  build->add_option("--out", cfg.out, "cache path")->envname("MFORGE_OUT");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_geometry_flags(verify, cfg);
  verify->add_option("--suite", cfg.suite, "axioms, gq-elations, extensions, moufang, corollaries, h3 or all")
      ->envname("MFORGE_SUITE")
      ->capture_default_str();
  verify->add_option("--seed", cfg.seed, "seed for sampled instances")->envname("MFORGE_SEED")->capture_default_str();
  verify->add_option("--cap", cfg.cap, "group closure cap")->envname("MFORGE_CAP")->capture_default_str();
  verify->add_option("--jobs", cfg.jobs, "worker threads, 0 for all cores")->envname("MFORGE_JOBS")->capture_default_str();
  verify->add_option("--samples", cfg.samples, "sampled GQ instances per kind at q > 2")
      ->envname("MFORGE_SAMPLES")
      ->capture_default_str();
  verify->add_option("--roots", cfg.roots, "rank-3 roots per kind in the extension suite")
      ->envname("MFORGE_ROOTS")
      ->capture_default_str();
  verify->add_flag("--full", cfg.full, "exhaustive GQ instances at q > 2")->envname("MFORGE_FULL");
  verify->add_option("--format", cfg.format, "text or json summary")->envname("MFORGE_FORMAT")->capture_default_str();
  verify->add_option("--out", cfg.out, "report/1 JSON lines output")->envname("MFORGE_OUT");
  verify->add_option("--cache", cfg.cache, "geom/1 cache, built when missing")->envname("MFORGE_CACHE");

  auto* report = app.add_subcommand("report", "summarize a report/1 file");
  report->add_option("--in", report_in, "report/1 JSON lines")->required()->envname("MFORGE_IN");
  report->add_option("--format", cfg.format, "text or json")->envname("MFORGE_FORMAT")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*report) {
      if (cfg.format != "text" && cfg.format != "json") throw PreconditionError("format must be text or json");
      return cmd_report(report_in, cfg.format);
    }
    validate_config(cfg);
    if (*build) return cmd_build(cfg);
    return cmd_verify(cfg);
  } catch (const PreconditionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UnsupportedField& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kClaimFailure;
  }
}
