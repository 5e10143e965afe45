#pragma once

#include <iosfwd>

namespace dhsp::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kGuard = 3 };

/// Entry point of the dhsp tool. Normal output goes to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dhsp::cli
