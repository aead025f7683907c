#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phishpond::cli {

// Exit codes: 0 success, 1 findings (or input that fails analysis), 2 usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phishpond::cli
