// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string_view>

#include "lcs/colorspace.hpp"

namespace lcs {

struct NamedColor {
    std::string_view name;
    std::string_view hex;

    RgbColor rgb() const { return parse_hex_color(hex); }
    HslColor hsl() const { return rgb_to_hsl(rgb()); }
};

/// The 26 wall colors used for the per-timestep statistics experiments.
std::span<const NamedColor> timestep_palette();

}  // namespace lcs
