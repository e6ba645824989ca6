#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace cmap::cli {

/// Suite names accepted by `check --suite`.
const std::vector<std::string>& known_suites();
/// Check names accepted by `--tol NAME=VAL`, with their defaults.
const std::map<std::string, double>& default_tolerances();

Report run_check(const RunConfig& config, std::ostream& log);
Report run_metric(const RunConfig& config, std::ostream& log);
Report run_moduli(const RunConfig& config, std::ostream& log);

}  // namespace cmap::cli
