#ifndef DLW_CLI_HPP
#define DLW_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dlw {

/// Runs the command-line front end on the given arguments (without the
/// program name). Exit codes: 0 success, 1 requested property failed,
/// 2 parse error, 3 enumeration bound exceeded, 4 contract violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dlw

#endif
