#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace microsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Runs the command line (args excludes the program name). Reports go to
/// files; progress and the text summary go to out, diagnostics to err.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace microsim
