#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ssns {

/// Command-line driver. Returns 0 on success, 1 on validation failure and 2
/// on runtime failure (including failed validation checks). argv[0] is
/// the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssns
