#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace crv {

enum class CheckStatus { Pass, Violation, Error };

const char* to_string(CheckStatus s);
CheckStatus status_from_string(const std::string& s);

/// Structured outcome of one theorem check. status is pass iff every
/// residual is within tolerance, violation when some residual exceeds it
/// with all evaluations finite, error otherwise. Violations are first-class
/// results: an enclosed pole is a finding, not a failure of the tool.
struct VerificationReport {
  std::string job;   // label from the job config; defaults to the kind
  std::string kind;  // operation name
  std::map<std::string, std::string> inputs;  // echoed expressions and domains
  CheckStatus status = CheckStatus::Error;
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> residuals;
  double tolerance = 1e-8;
  nlohmann::json diagnostics = nlohmann::json::object();
  double runtime_ms = 0;

  double residual() const;  // max of residuals, 0 when empty

  /// Sets status from residuals vs tolerance (does not override Error).
  void settle();

  bool operator==(const VerificationReport& other) const;
};

/// Report JSON. Volatile timing is only included on demand so batch output
/// stays byte-stable across runs.
nlohmann::ordered_json report_to_json(const VerificationReport& r, bool with_runtime);
VerificationReport report_from_json(const nlohmann::json& j);

/// Human-readable rendering of a report: both sides, residual versus
/// tolerance, and the diagnostics (winding numbers, worst square, offending
/// homotopy parameters).
std::string explain(const VerificationReport& r);

}  // namespace crv
