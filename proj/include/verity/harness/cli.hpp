#pragma once

#include <string>
#include <vector>

namespace verity::harness {

/// Entry point behind the command-line tool. Subcommands: run, report,
/// plot, calibrate, validate-data, version. Returns 0 on success, 1 on
/// validation failure, 2 on runtime failure.
int cli(const std::vector<std::string>& args);

}  // namespace verity::harness
