#ifndef POLYCIRC_TOOLS_CLI_HPP
#define POLYCIRC_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace polycirc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args[0] is the program name). Output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polycirc::cli

#endif  // POLYCIRC_TOOLS_CLI_HPP
