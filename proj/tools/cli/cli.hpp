#pragma once

#include <istream>
#include <ostream>

namespace factcheck::cli {

/// Exit codes: 0 success, 2 input/config error, 3 insufficient data.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitData = 3;

/// Parses argv and runs one subcommand (crawl, normalize, train, predict,
/// evaluate). Never throws.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

/// Same, reading stdin from std::cin.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace factcheck::cli
