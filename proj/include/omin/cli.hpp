#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace omin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInternal = 2;

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on bad input or usage, 2 when an internal invariant is violated.
int dispatch(std::span<const std::string> args, std::ostream& out,
             std::ostream& err);

}  // namespace omin::cli
