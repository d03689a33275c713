#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "optospec/run.hpp"

namespace optospec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;

/// Flags of `emit` (or `scatter`) without the subcommand name. Throws
/// UsageError carrying the parser message.
RunConfig parse_config(const std::vector<std::string>& args, Process process = Process::Emission);

/// Full command line without the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace optospec::cli
