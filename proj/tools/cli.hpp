#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bzk::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;    // parse errors, bad input files, refused writes
inline constexpr int kNotFree = 2;  // tuple is not a manifold
inline constexpr int kDiff = 3;     // oracle found a difference

/// Runs `bzk <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bzk::cli
