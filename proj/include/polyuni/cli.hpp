#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyuni {

/// Exit codes: 0 success, 1 configuration error, 2 engine failure (a partial
/// report is still written).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace polyuni
