#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aqsp::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitNoWalk = 2;
inline constexpr int kExitInputError = 3;

/// Entry point shared by the `aqsp` binary and the CLI tests. `args`
/// excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aqsp::cli
