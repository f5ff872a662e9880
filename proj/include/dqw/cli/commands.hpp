#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dqw::cli {

/// Runs `dqw <args>`; exit code 0 on pass or value, 1 on a mathematical
/// failure, 2 on a usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dqw::cli
