// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "netmeasure/scenario.hpp"

namespace netmeasure {

enum ExitCode : int { kExitPass = 0, kExitGateFailure = 1, kExitInputError = 2 };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  /// Overrides the level used by single-level commands.
  std::optional<int> level;
  std::size_t workers = 1;
};

std::vector<std::string> command_names();

/// Runs one command, writes its tables under out_dir and a summary to `log`.
/// Returns kExitGateFailure when a gate of the command fails. Throws
/// ScenarioError for unknown commands.
int run_command(const std::string& command, const Scenario& scenario, const RunOptions& options,
                std::ostream& log);

}  // namespace netmeasure
