#pragma once

namespace subsetminer {

// Full command-line entry point. Returns the process exit status: 0 on
// success, 1 on validation/I-O failures, 2 on usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace subsetminer
