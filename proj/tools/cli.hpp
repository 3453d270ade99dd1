#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treefactor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitResource = 3;

/// Runs the command line (args excludes the program name). Reports go to out,
/// diagnostics and usage to err.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace treefactor::cli
