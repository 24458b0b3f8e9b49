#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "oneway/convert.hpp"

namespace oneway::app {

inline constexpr int kSchemaVersion = 1;

struct SuiteResult {
  std::string suite;
  std::vector<BoundCheck> rows;

  bool all_pass() const;
  bool operator==(const SuiteResult&) const = default;
};

struct RunReport {
  int schema_version = kSchemaVersion;
  std::string artifact_version;
  nlohmann::json config = nlohmann::json::object();
  /// Per-instance records (task, protocol and theorem report objects).
  nlohmann::json instances = nlohmann::json::array();
  std::vector<SuiteResult> suites;
  /// Every bound comparison, flattened, tagged by instance.
  std::vector<std::pair<std::string, BoundCheck>> checks;
  /// Only present when requested; excluded by default so reports are byte-stable.
  std::optional<double> wall_clock_seconds;

  bool all_pass() const;
  bool operator==(const RunReport&) const = default;
};

nlohmann::json to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& j);

/// Two-space indented JSON with a trailing newline.
std::string emit_json(const RunReport& r);
/// instance,check,bound,measured,tolerance,verdict
std::string emit_csv(const RunReport& r);

std::string artifact_version();

}  // namespace oneway::app
