#pragma once

#include <iosfwd>

namespace rankmix::cli {

/// Entry point of the `rankmix` tool. Normal output goes to `out`, diagnostics
/// to `err`; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rankmix::cli
