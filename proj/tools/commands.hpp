#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace discpack::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCertificationFailed = 2;
inline constexpr int kExitConfigError = 3;

/// Runs the command line `args` (without the program name). Data goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace discpack::cli
