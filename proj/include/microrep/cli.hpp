#pragma once

namespace microrep {

// Full command-line entry point. Exit codes: 0 success, 2 usage/config/data
// error, 3 numerical/runtime error (gradcheck returns 1 when the gradient
// audit fails).
int run_cli(int argc, const char* const* argv);

} // namespace microrep
