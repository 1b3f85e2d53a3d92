// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "lcs/intervene.hpp"

namespace lcs {

/// height x width patch grid of HSL colors, row-major.
class ColorGrid {
public:
    /// Throws lcs::Error unless both dimensions are positive and
    /// height * width == cells.size().
    ColorGrid(std::size_t height, std::size_t width, std::vector<HslColor> cells);

    static ColorGrid filled(std::size_t height, std::size_t width, const HslColor& color);

    std::size_t height() const { return height_; }
    std::size_t width() const { return width_; }
    std::size_t size() const { return cells_.size(); }
    const HslColor& at(std::size_t row, std::size_t col) const { return cells_[row * width_ + col]; }
    const HslColor& operator[](std::size_t index) const { return cells_[index]; }
    const std::vector<HslColor>& cells() const { return cells_; }

private:
    std::size_t height_;
    std::size_t width_;
    std::vector<HslColor> cells_;
};

struct GridDims {
    std::size_t height = 0;
    std::size_t width = 0;
};

/// Mid-generation observation: each patch is projected, normalized from
/// timestep t to the reference timestep and decoded.
ColorGrid observe(const LatentTensor& z, int t, const SubspaceModel& m, const AnchorSet& anchors,
                  const StatsTable& stats, GridDims dims);

/// Mean CIEDE2000 over corresponding cells.
double grid_de00_per_pixel(const ColorGrid& pred, const ColorGrid& ref);

/// CIEDE2000 between the two grids' average colors, averaged in linear RGB.
double grid_de00_mean_pixel(const ColorGrid& pred, const ColorGrid& ref);

/// Average of the masked cells in linear RGB, converted back to HSL.
HslColor masked_mean_color(const ColorGrid& grid, const PatchMask& mask);

/// Binary PPM (P6, maxval 255), each cell drawn as a cell_px x cell_px block.
std::vector<std::uint8_t> render_ppm(const ColorGrid& grid, std::size_t cell_px = 1);

}  // namespace lcs
