// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcs::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kInput = 2 };

/// Runs one `lcs` invocation. argv[0] is the program name. Never throws;
/// failures are reported on `err` and through the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcs::cli
