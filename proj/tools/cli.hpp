#pragma once

#include <iosfwd>

namespace dap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `dap` tool with explicit streams, so tests can drive it.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dap::cli
