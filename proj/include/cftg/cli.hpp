// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_CLI_HPP_
#define CFTG_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace cftg {

// Exit codes.
inline constexpr int kExitOk = 0;           // identity, finite, success
inline constexpr int kExitNegative = 1;     // non-identity, infinite
inline constexpr int kExitInput = 2;        // malformed spec, word or flags
inline constexpr int kExitInconclusive = 3; // unknown order, no stabilization
inline constexpr int kExitVerify = 4;       // verification failure

// Runs one command line (args excludes the program name). JSON goes to
// out, the human summary to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cftg

#endif  // CFTG_CLI_HPP_
