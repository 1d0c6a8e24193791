#ifndef ESPEED_CLI_HPP
#define ESPEED_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace espeed::cli {

// Exit codes: 0 success, 1 domain error, 2 usage error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

// args[0] is the program name. Diagnostics go to err as one line,
// "error: <message>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace espeed::cli

#endif
