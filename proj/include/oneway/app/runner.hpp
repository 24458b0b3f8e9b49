#pragma once

#include "oneway/app/config.hpp"
#include "oneway/app/report.hpp"

namespace oneway::app {

/// Executes the configured pipeline. All randomness derives from config.seed.
RunReport run_experiment(const ExperimentConfig& config);

/// Writes the JSON report to `out` and the CSV summary next to it (".csv").
/// Both files are written only after the report is complete.
void write_report(const RunReport& report, const std::string& out);

}  // namespace oneway::app
