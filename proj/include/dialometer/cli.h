#ifndef DIALOMETER_CLI_H_
#define DIALOMETER_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace dialometer {

// Runs `dialometer <args...>` (program name excluded). Output that is not
// redirected with --out goes to `out`; diagnostics go to `err`.
// Returns 0 on success, 2 for input errors, 3 for metric preconditions and
// 4 for internal failures.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dialometer

#endif  // DIALOMETER_CLI_H_
