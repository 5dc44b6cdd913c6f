#pragma once

namespace pstable {

// Front end behind the pstable binary. Returns the process exit code:
// 0 all requested checks passed, 1 a check failed or a solve diverged,
// 2 usage or configuration error.
int run_cli(int argc, const char* const* argv);

}  // namespace pstable
