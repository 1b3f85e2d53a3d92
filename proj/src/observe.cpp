// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "lcs/observe.hpp"

#include <string>

#include "lcs/error.hpp"

namespace lcs {

namespace {

void require_same_shape(const ColorGrid& a, const ColorGrid& b) {
    require(a.height() == b.height() && a.width() == b.width(), "color grids have different shapes");
}

LinearRgb mean_linear(const ColorGrid& grid, const std::vector<std::size_t>& cells) {
    LinearRgb sum;
    for (std::size_t i : cells) {
        const LinearRgb c = to_linear(hsl_to_rgb(grid[i]));
        sum.r += c.r;
        sum.g += c.g;
        sum.b += c.b;
    }
    const double n = static_cast<double>(cells.size());
    return {sum.r / n, sum.g / n, sum.b / n};
}

}  // namespace

ColorGrid::ColorGrid(std::size_t height, std::size_t width, std::vector<HslColor> cells)
    : height_(height), width_(width), cells_(std::move(cells)) {
    require(height_ > 0 && width_ > 0, "grid dimensions must be positive");
    require(height_ * width_ == cells_.size(), "grid dimensions do not match cell count");
}

ColorGrid ColorGrid::filled(std::size_t height, std::size_t width, const HslColor& color) {
    return ColorGrid(height, width, std::vector<HslColor>(height * width, color));
}

ColorGrid observe(const LatentTensor& z, int t, const SubspaceModel& m, const AnchorSet& anchors,
                  const StatsTable& stats, GridDims dims) {
    require(dims.height * dims.width == static_cast<std::size_t>(z.patches()),
            "grid " + std::to_string(dims.height) + "x" + std::to_string(dims.width) + " does not match " +
                std::to_string(z.patches()) + " patches");
    const LcsCoords normalized = normalize(project(z, m), t, stats);
    std::vector<HslColor> cells;
    cells.reserve(static_cast<std::size_t>(z.patches()));
    for (Eigen::Index i = 0; i < normalized.rows(); ++i)
        cells.push_back(decode(Vec3(normalized.row(i).transpose()), anchors));
    return ColorGrid(dims.height, dims.width, std::move(cells));
}

double grid_de00_per_pixel(const ColorGrid& pred, const ColorGrid& ref) {
    require_same_shape(pred, ref);
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        sum += ciede2000(hsl_to_lab(pred[i]), hsl_to_lab(ref[i]));
    return sum / static_cast<double>(pred.size());
}

double grid_de00_mean_pixel(const ColorGrid& pred, const ColorGrid& ref) {
    require_same_shape(pred, ref);
    const std::vector<std::size_t> all = PatchMask::all(pred.size()).selected();
    return ciede2000(linear_rgb_to_lab(mean_linear(pred, all)), linear_rgb_to_lab(mean_linear(ref, all)));
}

HslColor masked_mean_color(const ColorGrid& grid, const PatchMask& mask) {
    require(!mask.empty(), "mask is empty");
    require(mask.total() == grid.size(), "mask size does not match grid");
    return rgb_to_hsl(from_linear(mean_linear(grid, mask.selected())));
}

std::vector<std::uint8_t> render_ppm(const ColorGrid& grid, std::size_t cell_px) {
    require(cell_px >= 1, "cell size must be at least one pixel");
    const std::size_t w = grid.width() * cell_px;
    const std::size_t h = grid.height() * cell_px;
    const std::string header = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";

    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + 3 * w * h);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const auto rgb = hsl_to_rgb(grid.at(y / cell_px, x / cell_px)).to_bytes();
            out.insert(out.end(), rgb.begin(), rgb.end());
        }
    }
    return out;
}

}  // namespace lcs
