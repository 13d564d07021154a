#pragma once

#include <ostream>

namespace enas::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Entry point of `enas_lab`. Subcommands: fitness, classify, oracle, run,
/// sweep, fit. Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace enas::cli
