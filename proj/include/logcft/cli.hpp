#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace logcft::cli {

// Environment variable holding the default precision.
inline constexpr const char* kPrecisionEnv = "LOGCFT_PRECISION";

// Exit codes: 0 success, 2 input error, 3 internal inconsistency.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logcft::cli
