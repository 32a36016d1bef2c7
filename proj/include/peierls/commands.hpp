#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "peierls/config.hpp"

namespace peierls {

/// Exit codes shared by every subcommand.
enum ExitCode : int { exit_ok = 0, exit_validation_failed = 1, exit_config_error = 2, exit_numerical_error = 3 };

struct CommandOutput {
  std::vector<std::string> files;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  int exit_code = exit_ok;
};

// Each command validates the config, writes <out>.<kind>.csv and/or .json, and
// returns the files written plus the JSON summary. Config errors throw ConfigError,
// domain errors DomainError, solver failures NumericalError.
CommandOutput cmd_landscape(const RunConfig& config);
CommandOutput cmd_critical_points(const RunConfig& config);
CommandOutput cmd_spectrum(const RunConfig& config);
CommandOutput cmd_dynamics(const RunConfig& config);
CommandOutput cmd_kink_spectrum(const RunConfig& config);
CommandOutput cmd_kink_propagate(const RunConfig& config);
CommandOutput cmd_validate(const RunConfig& config);

}  // namespace peierls
