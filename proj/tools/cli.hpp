#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strata::cli {

enum Exit : int { kOk = 0, kError = 1, kNegative = 10 };

/// Runs one command line (without the program name). `in` is read when the
/// input path is omitted or "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace strata::cli
