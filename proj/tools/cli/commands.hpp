#pragma once

#include <iosfwd>

#include "cli/options.hpp"

namespace fastdiff::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace fastdiff::cli
