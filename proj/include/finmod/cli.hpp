#ifndef FINMOD_CLI_HPP
#define FINMOD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace finmod {

/// Runs one CLI invocation. Exit status 0 = success / logically true,
/// 1 = logically false (non-equivalent, FAIL, ...), 2 = error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finmod

#endif
