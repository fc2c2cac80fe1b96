#pragma once

#include <ostream>

namespace pchain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitTransport = 2;

/// Entry point of the `pchain` tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pchain::cli
