#pragma once

#include <iosfwd>

namespace rankscreen::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitUsage = 64;

/// Entry point shared by the executable and the tests. Command output that is
/// not written to a file goes to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rankscreen::cli
