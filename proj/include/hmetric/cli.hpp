#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hmetric {

/// Runs one command line (program name excluded). Exit codes: 0 success,
/// 1 usage or parse error, 2 refusal, 3 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmetric
