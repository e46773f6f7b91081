#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sphdeconv {

/// Runs one CLI invocation. `args` excludes the program name. Returns the
/// process exit code; failures print a JSON error object to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphdeconv
