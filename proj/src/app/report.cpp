#include "oneway/app/report.hpp"

#include <algorithm>
#include <sstream>

#include "oneway/error.hpp"
#include "oneway/version.hpp"

namespace oneway::app {

bool SuiteResult::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundCheck& c) { return c.pass; });
}

bool RunReport::all_pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.all_pass(); }) &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second.pass; });
}

std::string artifact_version() { return std::string(kVersion) + "+" + kGitDescribe; }

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : r.suites) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : s.rows) rows.push_back(to_json(c));
    suites.push_back({{"suite", s.suite}, {"rows", rows}, {"all_pass", s.all_pass()}});
  }
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& [instance, c] : r.checks) {
    auto j = to_json(c);
    j["instance"] = instance;
    checks.push_back(std::move(j));
  }
  nlohmann::json j{{"schema_version", r.schema_version},
                   {"artifact_version", r.artifact_version},
                   {"config", r.config},
                   {"instances", r.instances},
                   {"suites", suites},
                   {"checks", checks},
                   {"all_pass", r.all_pass()}};
  if (r.wall_clock_seconds) j["wall_clock_seconds"] = *r.wall_clock_seconds;
  return j;
}

RunReport run_report_from_json(const nlohmann::json& j) {
  try {
    RunReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion) {
      throw Error(Errc::parse, "unsupported report schema_version " + std::to_string(r.schema_version));
    }
    r.artifact_version = j.at("artifact_version").get<std::string>();
    r.config = j.at("config");
    r.instances = j.at("instances");
    for (const auto& s : j.at("suites")) {
      SuiteResult suite{s.at("suite").get<std::string>(), {}};
      for (const auto& row : s.at("rows")) suite.rows.push_back(bound_check_from_json(row));
      r.suites.push_back(std::move(suite));
    }
    for (const auto& c : j.at("checks")) r.checks.emplace_back(c.at("instance").get<std::string>(), bound_check_from_json(c));
    if (j.contains("wall_clock_seconds")) r.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    if (j.at("all_pass").get<bool>() != r.all_pass()) {
      throw Error(Errc::parse, "report all_pass disagrees with its verdicts");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("report: ") + e.what());
  }
}

std::string emit_json(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

std::string emit_csv(const RunReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "instance,check,bound,measured,tolerance,verdict\n";
  auto row = [&](const std::string& instance, const BoundCheck& c) {
    os << instance << ",\"" << c.name << "\"," << c.bound << ',' << c.measured << ',' << c.tolerance << ','
       << (c.pass ? "pass" : "fail") << '\n';
  };
  for (const auto& s : r.suites) {
    for (const auto& c : s.rows) row("suite:" + s.suite, c);
  }
  for (const auto& [instance, c] : r.checks) row(instance, c);
  return os.str();
}

}  // namespace oneway::app
