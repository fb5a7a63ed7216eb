#pragma once

#include <ostream>

namespace qsearch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSearchFailed = 2;  // ALGORITHM_FAILURE or KEY_NOT_PRESENT
inline constexpr int kExitInputError = 3;

/// Full command-line entry point; documents go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsearch
