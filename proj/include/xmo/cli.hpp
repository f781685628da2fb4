#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xmo::cli {

/// Exit statuses of the command-line tool.
enum Status : int { kOk = 0, kUnknownCommand = 1, kPrecondition = 2, kDomain = 3 };

/// Runs one command. `args` excludes the program name: the first entry is
/// the subcommand. Reports go to <out>.json and <out>.csv; a summary line
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads `key = value` lines ('#' starts a comment) into option arguments.
std::vector<std::string> config_arguments(const std::string& text);

/// The subcommand names.
std::vector<std::string> commands();

}  // namespace xmo::cli
