#ifndef FASTDIAG_TOOLS_CLI_HPP_
#define FASTDIAG_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace fastdiag::cli {

  // Exit codes: 0 all checks passed, 1 mathematical disagreement or failed
  // verification, 2 usage or parse error.
  inline constexpr int exit_ok       = 0;
  inline constexpr int exit_disagree = 1;
  inline constexpr int exit_usage    = 2;

  // args excludes the program name.
  int run(std::vector<std::string> const& args, std::ostream& out,
          std::ostream& err);

}  // namespace fastdiag::cli

#endif  // FASTDIAG_TOOLS_CLI_HPP_
