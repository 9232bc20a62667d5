#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hurwitz::cli {

/// Exit codes: 0 success, 1 domain error, 2 I/O or parse error, 3 internal
/// consistency failure.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kInputError = 2;
inline constexpr int kDefect = 3;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hurwitz::cli
