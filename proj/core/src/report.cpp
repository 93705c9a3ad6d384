#include "crv/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crv {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Violation: return "violation";
    case CheckStatus::Error: return "error";
  }
  return "?";
}

CheckStatus status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "violation") return CheckStatus::Violation;
  if (s == "error") return CheckStatus::Error;
  throw std::runtime_error("unknown status '" + s + "'");
}

double VerificationReport::residual() const {
  double m = 0;
  for (double r : residuals) m = std::max(m, std::abs(r));
  return m;
}

void VerificationReport::settle() {
  if (status == CheckStatus::Error && diagnostics.contains("error")) return;
  bool ok = true;
  for (double r : residuals)
    if (!(std::abs(r) <= tolerance)) ok = false;
  status = ok ? CheckStatus::Pass : CheckStatus::Violation;
}

bool VerificationReport::operator==(const VerificationReport& other) const {
  return job == other.job && kind == other.kind && inputs == other.inputs &&
         status == other.status &&
         left == other.left && right == other.right && residuals == other.residuals &&
         tolerance == other.tolerance && diagnostics == other.diagnostics;
}

nlohmann::ordered_json report_to_json(const VerificationReport& r, bool with_runtime) {
  nlohmann::ordered_json j;
  j["job"] = r.job;
  j["kind"] = r.kind;
  j["inputs"] = r.inputs;
  j["status"] = to_string(r.status);
  j["left"] = r.left;
  j["right"] = r.right;
  j["residual"] = r.residual();
  j["residuals"] = r.residuals;
  j["tolerance"] = r.tolerance;
  j["diagnostics"] = r.diagnostics;
  if (with_runtime) j["runtime_ms"] = r.runtime_ms;
  return j;
}

VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.job = j.at("job").get<std::string>();
  r.kind = j.at("kind").get<std::string>();
  if (j.contains("inputs"))
    r.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
  r.status = status_from_string(j.at("status").get<std::string>());
  r.left = j.at("left").get<std::vector<double>>();
  r.right = j.at("right").get<std::vector<double>>();
  r.residuals = j.at("residuals").get<std::vector<double>>();
  r.tolerance = j.at("tolerance").get<double>();
  r.diagnostics = j.at("diagnostics");
  if (j.contains("runtime_ms")) r.runtime_ms = j.at("runtime_ms").get<double>();
  return r;
}

namespace {

std::string number_list(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(12);
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << "]";
  return os.str();
}

}  // namespace

std::string explain(const VerificationReport& r) {
  std::ostringstream os;
  os.precision(12);
  std::string label = r.job.empty() ? r.kind : r.job;
  os << label << " (" << r.kind << "): ";
  switch (r.status) {
    case CheckStatus::Pass: os << "PASS"; break;
    case CheckStatus::Violation: os << "VIOLATION"; break;
    case CheckStatus::Error: os << "ERROR"; break;
  }
  os << "\n";
  for (const auto& [key, value] : r.inputs) os << "  " << key << " = " << value << "\n";
  if (!r.left.empty()) os << "  left  = " << number_list(r.left) << "\n";
  if (!r.right.empty()) os << "  right = " << number_list(r.right) << "\n";
  os << "  residual " << r.residual() << " vs tolerance " << r.tolerance << "\n";
  for (const auto& [key, value] : r.diagnostics.items())
    os << "  " << key << "=" << value.dump() << "\n";
  if (r.runtime_ms > 0) os << "  runtime " << r.runtime_ms << " ms\n";
  return os.str();
}

}  // namespace crv
