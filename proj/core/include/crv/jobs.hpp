#pragma once

#include <functional>
#include <string>
#include <vector>

#include "crv/fluids.hpp"
#include "crv/theorems.hpp"

namespace crv {

/// One fully validated job from a config: expressions parsed in the kind's
/// required mode and geometry literals constructed up front, so a malformed
/// config aborts before any job runs.
struct PreparedJob {
  std::string name;
  std::string kind;
  std::function<VerificationReport()> execute;  // writes opt-in CSV as a side effect
};

struct JobConfig {
  std::vector<PreparedJob> jobs;
};

/// Parses and validates a config tree. Throws Error{Config} on unknown
/// kinds, malformed geometry, or expressions that do not parse.
JobConfig parse_config(const nlohmann::json& j);
JobConfig parse_config_text(const std::string& text);

struct RunSummary {
  std::vector<VerificationReport> reports;  // config order
  int passes = 0;
  int violations = 0;
  int errors = 0;
  double total_runtime_ms = 0;
};

/// Executes all jobs; per-job evaluation errors are contained as
/// status = error reports.
RunSummary run(const JobConfig& config);

/// Summary JSON: "reports" and "counts" are deterministic for a given
/// config and build; wall-clock times live only under the separate
/// "timing" key.
nlohmann::ordered_json summary_to_json(const RunSummary& s);

/// 0 when every job passed, 1 when some violated and none errored,
/// 2 on any error.
int exit_code(const RunSummary& s);

/// Geometry literals shared by the config format and the CLI flags.
Path parse_path_json(const nlohmann::json& j);
Region2D parse_region_json(const nlohmann::json& j);
RectRegion parse_rect_json(const nlohmann::json& j);
Solid3D parse_solid_json(const nlohmann::json& j);
GridSampling parse_grid_json(const nlohmann::json& j);
QuadSpec parse_quad_json(const nlohmann::json& j);

}  // namespace crv
