// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lcs {

/// Raised for invalid or degenerate inputs (bad shapes, empty masks,
/// missing timesteps, malformed files). The CLI maps it to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition)
        throw Error(message);
}

}  // namespace lcs
