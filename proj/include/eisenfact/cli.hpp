#ifndef EISENFACT_CLI_HPP
#define EISENFACT_CLI_HPP

#include <string>
#include <vector>

namespace eisenfact {

// Exit codes: 0 = pass, 1 = verification failure, 2 = usage or I/O error.
int run_cli(const std::vector<std::string>& args);

}  // namespace eisenfact

#endif
