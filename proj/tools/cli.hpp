// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cgm::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFindings = 1;  // --fail-on-violations, or bad usage
inline constexpr int kParseError = 2;
inline constexpr int kNormalizeError = 3;
inline constexpr int kOrderMismatch = 4;
inline constexpr int kManifestError = 5;
inline constexpr int kParamError = 6;

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color = false;  // ANSI color on diagnostics
};

/// Runs one `cgm` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, Streams io);

}  // namespace cgm::cli
