#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace nilflow::app {

const std::vector<std::string>& command_names();

struct RunContext {
  Json config;  ///< resolved and validated
  std::filesystem::path out_dir;
  bool quiet = false;
  std::ostream* log = nullptr;  ///< progress lines; ignored when quiet
};

/// Runs one command and writes its report(s) under ctx.out_dir. Returns the
/// process exit status for successful runs (0, or 1 for a failing selftest).
/// Throws ConfigError for configuration problems and NumericalError for
/// numerical failures.
int run_command(const std::string& name, const RunContext& ctx);

}  // namespace nilflow::app
