#pragma once

#include <string>
#include <vector>

#include "cli/settings.hpp"

namespace clutterscan::cli {

const std::vector<std::string>& command_names();

/// Runs one command, writing its outputs and manifest.txt under out-dir.
/// Errors propagate as clutterscan::Error.
void run_command(const Settings& settings);

/// 2 for configuration problems, 3 for numerical and budget failures.
int exit_code_for(const std::exception& e);

}  // namespace clutterscan::cli
