#ifndef MN_CLI_HPP
#define MN_CLI_HPP

#include <string>
#include <vector>

namespace mn {

/// Command-line front door: generate | learn | evaluate | bench.
/// Returns the process exit code.
int cli_main(int argc, char** argv);
int cli_main(const std::vector<std::string>& args);

} // namespace mn

#endif
