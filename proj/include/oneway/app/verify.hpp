#pragma once

#include <string>
#include <vector>

#include "oneway/app/report.hpp"

namespace oneway::app {

/// {"qcore", "pgm", "shadows", "oneshot", "convert"}.
const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite) with fixed seeds derived from `seed`.
/// Throws Errc::invalid_argument for unknown names.
std::vector<SuiteResult> run_suites(const std::string& name, std::uint64_t seed);

}  // namespace oneway::app
