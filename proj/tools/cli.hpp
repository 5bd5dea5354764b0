#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace altsum_cli {

/// Full command-line surface; returns the process exit code.
///   0 success, 1 verification failure, 2 method mismatch,
///   3 input/parse/domain error, 4 precision exhaustion.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace altsum_cli
