#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fusionrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one subcommand. `args` excludes the program name. Errors are reported on `err` as a
/// single line "error: <usage|data>: <message>".
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fusionrank::cli
