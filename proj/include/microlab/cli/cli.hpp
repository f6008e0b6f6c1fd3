#pragma once

#include <filesystem>
#include <ostream>

namespace microlab {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitUsage = 2 };

/// Runs one `microlab` command line. Exit codes: 0 success, 1 failed validation or
/// failed operation, 2 usage error.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Bundled demo dataset directory used by `serve` when --demo-dir is not given.
[[nodiscard]] std::filesystem::path default_demo_dir();

}  // namespace microlab
