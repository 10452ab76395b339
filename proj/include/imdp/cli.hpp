// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imdp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;
inline constexpr int kExitOracleDisagreement = 3;

/// Runs one command line (args excludes the program name). Results go to `out`, diagnostics to
/// `err`; `in` serves model files given as `-` or omitted.
int run(std::vector<std::string> const& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace imdp::cli
