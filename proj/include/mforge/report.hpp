#pragma once

#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"

namespace mforge {

inline constexpr const char* kReportSchema = "report/1";

enum class Outcome { Pass, Fail, Skipped };
std::string outcome_name(Outcome o);

struct VerificationReport {
  std::string claim;
  std::string instance;
  Outcome result = Outcome::Skipped;
  std::vector<int> witness;  // nonempty on fail
  nlohmann::json counts = nlohmann::json::object();
  std::string detail;
  double wall_ms = 0;

  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);  // throws CacheError
};

/// Pass or fail; a failure without a witness gets the instance index.
VerificationReport make_report(std::string claim, std::string instance, bool pass, std::vector<int> witness = {},
                               nlohmann::json counts = nlohmann::json::object(), std::string detail = {});
VerificationReport skipped_report(std::string claim, std::string instance, std::string reason);

/// Thread-safe collector. Blocks are sorted by (claim, instance) and then streamed
/// to the optional JSON-lines output as each block is flushed.
class ReportSink {
 public:
  explicit ReportSink(std::ostream* jsonl = nullptr) : out_(jsonl) {}

  void add(VerificationReport r);
  void add_block(std::vector<VerificationReport> block);
  /// Sorts the pending block, appends it to the finished list and streams it.
  void flush();

  const std::vector<VerificationReport>& reports() const { return done_; }
  int failures() const;
  std::string summary_text() const;
  nlohmann::json summary_json() const;

 private:
  std::ostream* out_;
  std::mutex mu_;
  std::vector<VerificationReport> pending_, done_;
};

void sort_reports(std::vector<VerificationReport>& v);
/// Parses a report/1 JSON-lines stream.
std::vector<VerificationReport> read_reports(std::istream& in);
std::string summarize(const std::vector<VerificationReport>& v);

}  // namespace mforge
