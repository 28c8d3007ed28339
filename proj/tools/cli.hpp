#pragma once

#include <iosfwd>

namespace bhlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCapacity = 3;

/// Runs the command line in-process. Normal output goes to `out`, diagnostics
/// to `err`; the return value is the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bhlab::cli
