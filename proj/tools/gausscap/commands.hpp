#ifndef GAUSSCAP_TOOLS_COMMANDS_HPP
#define GAUSSCAP_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gausscap::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInputError = 2,
  kUnphysical = 3,
  kEnsembleError = 4,
  kUsage = 64,
};

/// Runs the tool on `args` (without the program name). Reports go to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 12 significant digits, '.' separator, independent of the C locale.
std::string format_number(double v);

}  // namespace gausscap::cli

#endif
