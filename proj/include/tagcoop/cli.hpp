#ifndef TAGCOOP_CLI_HPP
#define TAGCOOP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tagcoop {

// Environment variable consulted for the artifact directory when --out is
// not given.
inline constexpr const char* kOutDirEnv = "TAGCOOP_OUT";

// Entry point of the `tagcoop` tool. args excludes the program name.
// Returns the process exit status.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tagcoop

#endif  // TAGCOOP_CLI_HPP
