#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace liespline::cli {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kInvalidInput = 2,  ///< malformed scenario or inconsistent data
  kNumerical = 3,     ///< numerical failure, e.g. a log near angle pi
};

/// Directory searched for bare fixture names: $LIESPLINE_FIXTURES, else the build-time default.
std::filesystem::path fixture_dir();

/// Resolves a path, or a fixture name with or without ".json".
std::filesystem::path resolve_scenario(const std::string& arg);

/// Entry point of the tool; argv[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liespline::cli
