#pragma once

#include <string>
#include <vector>

namespace pompeiu::cli {

// Exit codes: 0 success, 1 config error, 2 numerical failure,
// 3 verification breach.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace pompeiu::cli
