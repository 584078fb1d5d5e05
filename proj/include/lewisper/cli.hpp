#pragma once

namespace lewisper {
namespace cli {

// Full command-line entry point; returns the process exit code:
// 0 all checks passed, 1 a numerical check failed, 2 usage/parse/IO errors.
int run(int argc, const char* const* argv);

}  // namespace cli
}  // namespace lewisper
