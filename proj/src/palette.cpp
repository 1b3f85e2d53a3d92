// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "lcs/palette.hpp"

#include <array>

namespace lcs {

namespace {

constexpr std::array<NamedColor, 26> kTimestepPalette = {{
    {"bright red", "#D81511"},
    {"light red", "#E7A0AD"},
    {"dark red", "#78262F"},
    {"bright orange", "#EA710B"},
    {"light orange", "#F3C09C"},
    {"dark orange", "#AA552F"},
    {"bright yellow", "#F3DB1B"},
    {"light yellow", "#ECD25B"},
    {"dark yellow", "#D69613"},
    {"bright green", "#26C812"},
    {"light green", "#8DCF7A"},
    {"dark green", "#1D4B32"},
    {"bright blue", "#0FB3DF"},
    {"light blue", "#94D3E3"},
    {"dark blue", "#184166"},
    {"bright purple", "#9360B4"},
    {"light purple", "#CDB5E4"},
    {"dark purple", "#59334C"},
    {"bright grey", "#A3A4A3"},
    {"light grey", "#BCBFBE"},
    {"dark grey", "#3F4244"},
    {"white", "#E0E1E0"},
    {"black", "#292929"},
    {"bright brown", "#AA6B46"},
    {"light brown", "#C8A171"},
    {"dark brown", "#563727"},
}};

}  // namespace

std::span<const NamedColor> timestep_palette() { return kTimestepPalette; }

}  // namespace lcs
