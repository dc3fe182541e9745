#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpath {

// Exit statuses of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainFailure = 1;  // not joinable, law failed, check rejected ...
inline constexpr int kExitUsage = 2;          // parse errors, bad flags, unreadable files

// Runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpath
