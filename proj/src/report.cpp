#include "mforge/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "mforge/errors.hpp"

namespace mforge {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Skipped: return "skipped";
  }
  return "?";
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j = {{"schema", kReportSchema}, {"claim", claim}, {"instance", instance},
                      {"result", outcome_name(result)}, {"witness", witness}, {"counts", counts},
                      {"wall_ms", std::round(wall_ms * 1000) / 1000}};
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema") != kReportSchema) throw CacheError("unknown report schema");
    VerificationReport r;
    r.claim = j.at("claim").get<std::string>();
    r.instance = j.at("instance").get<std::string>();
    const auto res = j.at("result").get<std::string>();
    if (res == "pass") r.result = Outcome::Pass;
    else if (res == "fail") r.result = Outcome::Fail;
    else if (res == "skipped") r.result = Outcome::Skipped;
    else throw CacheError("bad result " + res);
    r.witness = j.at("witness").get<std::vector<int>>();
    r.counts = j.at("counts");
    r.wall_ms = j.at("wall_ms").get<double>();
    if (j.contains("detail")) r.detail = j["detail"].get<std::string>();
    if (r.result == Outcome::Fail && r.witness.empty()) throw CacheError("fail entry without witness");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw CacheError(std::string("malformed report: ") + e.what());
  }
}

VerificationReport make_report(std::string claim, std::string instance, bool pass, std::vector<int> witness,
                               nlohmann::json counts, std::string detail) {
  VerificationReport r;
  r.claim = std::move(claim);
  r.instance = std::move(instance);
  r.result = pass ? Outcome::Pass : Outcome::Fail;
  r.counts = std::move(counts);
  r.detail = std::move(detail);
  if (!pass) {
    r.witness = std::move(witness);
    if (r.witness.empty()) r.witness = {-1};
  }
  return r;
}

VerificationReport skipped_report(std::string claim, std::string instance, std::string reason) {
  VerificationReport r;
  r.claim = std::move(claim);
  r.instance = std::move(instance);
  r.result = Outcome::Skipped;
  r.detail = std::move(reason);
  return r;
}

void sort_reports(std::vector<VerificationReport>& v) {
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return std::tie(a.claim, a.instance) < std::tie(b.claim, b.instance);
  });
}

void ReportSink::add(VerificationReport r) {
  std::lock_guard lock(mu_);
  pending_.push_back(std::move(r));
}

void ReportSink::add_block(std::vector<VerificationReport> block) {
  std::lock_guard lock(mu_);
  for (auto& r : block) pending_.push_back(std::move(r));
}

void ReportSink::flush() {
  std::lock_guard lock(mu_);
  sort_reports(pending_);
  for (auto& r : pending_) {
    if (out_) *out_ << r.to_json().dump() << '\n';
    done_.push_back(std::move(r));
  }
  if (out_) out_->flush();
  pending_.clear();
}

int ReportSink::failures() const {
  return static_cast<int>(std::count_if(done_.begin(), done_.end(), [](const auto& r) { return r.result == Outcome::Fail; }));
}

namespace {

struct Tally {
  int pass = 0, fail = 0, skipped = 0;
  double ms = 0;
  const VerificationReport* first_fail = nullptr;
};

std::map<std::string, Tally> tally(const std::vector<VerificationReport>& v) {
  std::map<std::string, Tally> t;
  for (const auto& r : v) {
    auto& e = t[r.claim];
    e.ms += r.wall_ms;
    if (r.result == Outcome::Pass) ++e.pass;
    else if (r.result == Outcome::Skipped) ++e.skipped;
    else {
      ++e.fail;
      if (!e.first_fail) e.first_fail = &r;
    }
  }
  return t;
}

}  // namespace

std::string summarize(const std::vector<VerificationReport>& v) {
  std::ostringstream os;
  os << std::left << std::setw(36) << "claim" << std::right << std::setw(8) << "pass" << std::setw(6) << "fail"
     << std::setw(6) << "skip" << std::setw(12) << "ms" << '\n';
  int fails = 0;
  for (const auto& [claim, t] : tally(v)) {
    os << std::left << std::setw(36) << claim << std::right << std::setw(8) << t.pass << std::setw(6) << t.fail
       << std::setw(6) << t.skipped << std::setw(12) << std::fixed << std::setprecision(1) << t.ms << '\n';
    if (t.first_fail) {
      os << "  first failure: " << t.first_fail->instance << " witness";
      for (int w : t.first_fail->witness) os << ' ' << w;
      if (!t.first_fail->detail.empty()) os << " (" << t.first_fail->detail << ')';
      os << '\n';
    }
    fails += t.fail;
  }
  os << (fails == 0 ? "ALL PASS" : "FAILURES: " + std::to_string(fails)) << " (" << v.size() << " reports)\n";
  return os.str();
}

std::string ReportSink::summary_text() const { return summarize(done_); }

nlohmann::json ReportSink::summary_json() const {
  nlohmann::json claims = nlohmann::json::array();
  for (const auto& [claim, t] : tally(done_)) {
    claims.push_back({{"claim", claim}, {"pass", t.pass}, {"fail", t.fail}, {"skipped", t.skipped}});
  }
  return {{"schema", kReportSchema}, {"claims", claims}, {"failures", failures()}};
}

std::vector<VerificationReport> read_reports(std::istream& in) {
  std::vector<VerificationReport> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw CacheError("unparsable report line", {n});
    }
    out.push_back(VerificationReport::from_json(j));
  }
  return out;
}

}  // namespace mforge
