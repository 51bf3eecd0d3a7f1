#pragma once

#include "comsat/config.hpp"

namespace comsat {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericError = 3;
inline constexpr int kExitValidationFailed = 4;

int cmd_coverage(const ScenarioConfig& cfg);
int cmd_rate(const ScenarioConfig& cfg);
int cmd_optimize(const ScenarioConfig& cfg);
int cmd_validate(const ScenarioConfig& cfg);

/// Full argv entry point (subcommand dispatch + config/flag merging).
int run_cli(int argc, const char* const* argv);

}  // namespace comsat
