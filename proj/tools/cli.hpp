// Command-line front end: gen, run, sweep, analyze, plot.

#ifndef ISSP_TOOLS_CLI_HPP
#define ISSP_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace issp::cli {

/// Exit codes: 0 success, 1 runtime or data error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace issp::cli

#endif  // ISSP_TOOLS_CLI_HPP
