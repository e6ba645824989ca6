#pragma once

#include <ostream>
#include <span>
#include <string>

namespace cmap::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitConfig = 2;

/// Entry point of the `cmap` tool. Records go to `out`, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cmap::cli
