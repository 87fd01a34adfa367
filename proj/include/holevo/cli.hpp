#ifndef HOLEVO_CLI_HPP
#define HOLEVO_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace holevo {

// Runs one CLI invocation. `args` are the arguments after the program name.
// Data goes to `out` (or to the --out file, written atomically); diagnostics
// go to `err` only. Exit status: 0 success, 2 argument error, 3 resource
// limit, 4 numerical failure.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holevo

#endif
