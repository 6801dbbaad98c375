#pragma once

// Command-line driver.  Each subcommand runs one computation or identity
// check and writes a text or JSON report.

#include <ostream>
#include <string>
#include <vector>

namespace oslab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSchema = "oslab/1";

/// `args` excludes the program name.  Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oslab::cli
