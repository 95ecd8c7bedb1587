#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "koszul/report.hpp"

namespace koszul::cli {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMismatch = 2;

int exit_code(const BettiTable& t);
int exit_code(const VerifyReport& r);

/// Runs the command line (args[0] is the program name). Report text goes to
/// `out` unless --output is given; warnings and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace koszul::cli
