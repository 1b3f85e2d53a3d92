// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "lcs/error.hpp"
#include "lcs/observe.hpp"
#include "support/toy_world.hpp"

using namespace lcs;
using lcs::testing::hsl_near;
using lcs::testing::toy_world;

namespace {

double de(const HslColor& a, const HslColor& b) { return ciede2000(hsl_to_lab(a), hsl_to_lab(b)); }

double linearize(double v) { return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4); }

LinearRgb linear_average(const std::vector<HslColor>& colors) {
    LinearRgb m;
    for (const HslColor& c : colors) {
        const RgbColor rgb = hsl_to_rgb(c);
        m.r += linearize(rgb.r) / static_cast<double>(colors.size());
        m.g += linearize(rgb.g) / static_cast<double>(colors.size());
        m.b += linearize(rgb.b) / static_cast<double>(colors.size());
    }
    return m;
}

std::vector<HslColor> random_colors(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<HslColor> out;
    for (std::size_t i = 0; i < n; ++i)
        out.emplace_back(360.0 * u(rng), u(rng), 0.1 + 0.8 * u(rng));
    return out;
}

}  // namespace

TEST(ColorGrid, Validation) {
    EXPECT_THROW(ColorGrid(0, 1, {}), Error);
    EXPECT_THROW(ColorGrid(2, 2, std::vector<HslColor>(3)), Error);
    const ColorGrid g(1, 2, {HslColor(10, 0.5, 0.5), HslColor(20, 0.5, 0.5)});
    EXPECT_EQ(g.at(0, 1).h, 20.0);
}

TEST(Observe, SolidLatentsReturnTheirColor) {
    const auto& w = toy_world();
    for (const HslColor& c : {HslColor(0, 1, 0.5), HslColor(200, 0.6, 0.3), HslColor(75, 0.8, 0.7)}) {
        const ColorGrid g = observe(lcs::testing::solid(c, w.embedder), 50, w.model(), w.anchors, w.stats,
                                    lcs::testing::kGrid);
        for (const HslColor& cell : g.cells())
            EXPECT_TRUE(hsl_near(cell, c, 0.1, 1e-3, 1e-3)) << cell.h << " " << cell.s << " " << cell.l;
    }
}

TEST(Observe, StatsMeanMapsToReferenceMean) {
    const auto& w = toy_world();
    const StatsTable& s = builtin_flux_stats();
    const LatentTensor base = toy::gaussian_latent(4, w.embedder.dim(), 8);
    const HslColor want = decode(s.at(50).alpha, w.anchors);
    for (int t : {0, 10, 37, 50}) {
        LcsCoords c(4, 3);
        c.rowwise() = s.at(t).alpha.transpose();
        const ColorGrid g = observe(inject(base, c, w.model()), t, w.model(), w.anchors, s, GridDims{2, 2});
        for (const HslColor& cell : g.cells())
            EXPECT_TRUE(hsl_near(cell, want, 1e-6, 1e-9, 1e-9)) << "t=" << t;
    }
}

TEST(Observe, CheckerboardIsReproduced) {
    const auto& w = toy_world();
    const HslColor a(30, 0.9, 0.4), b(250, 0.5, 0.7);
    std::vector<HslColor> cells;
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t col = 0; col < 8; ++col)
            cells.push_back((r + col) % 2 == 0 ? a : b);
    const ColorGrid want(8, 8, cells);
    const ColorGrid got =
        observe(toy::embed_image(want, w.embedder), 50, w.model(), w.anchors, w.stats, lcs::testing::kGrid);
    for (std::size_t i = 0; i < 64; ++i)
        EXPECT_TRUE(hsl_near(got[i], want[i], 0.1, 1e-3, 1e-3)) << "cell " << i;
}

TEST(Observe, ShapeMismatchThrows) {
    const auto& w = toy_world();
    EXPECT_THROW(observe(toy::gaussian_latent(6, w.embedder.dim(), 1), 50, w.model(), w.anchors, w.stats,
                         GridDims{2, 2}),
                 Error);
}

TEST(Observe, AgreesWithGroundTruthDecoder) {
    const auto& w = toy_world();
    const std::vector<HslColor> colors = random_colors(64, 21);
    const ColorGrid image(8, 8, colors);
    LatentTensor z = toy::embed_image(image, w.embedder);
    // Noise orthogonal to the color subspace is invisible to both decoders.
    const Basis3& q = w.embedder.lift();
    RowMatrix noisy = z.data() + toy::gaussian_latent(64, w.embedder.dim(), 22).data();
    for (Eigen::Index i = 0; i < 64; ++i) {
        const Eigen::VectorXd d = (noisy.row(i) - z.row(i)).transpose();
        noisy.row(i) = z.row(i) + (d - q * (q.transpose() * d)).transpose();
    }
    z = LatentTensor(noisy);
    const ColorGrid got = observe(z, 50, w.model(), w.anchors, w.stats, lcs::testing::kGrid);
    const ColorGrid truth = toy::toy_decode_image(z, lcs::testing::kGrid, w.embedder);
    for (std::size_t i = 0; i < 64; ++i)
        EXPECT_LT(de(got[i], truth[i]), 0.5) << "cell " << i;
}

TEST(GridMetrics, PerPixel) {
    const HslColor a(0, 1, 0.5), b(120, 1, 0.5);
    const ColorGrid ref = ColorGrid::filled(2, 2, a);
    const ColorGrid pred(2, 2, {a, a, b, a});
    EXPECT_NEAR(grid_de00_per_pixel(pred, ref), de(a, b) / 4.0, 1e-12);
    EXPECT_NEAR(grid_de00_per_pixel(ref, pred), grid_de00_per_pixel(pred, ref), 1e-12);
    EXPECT_EQ(grid_de00_per_pixel(ref, ref), 0.0);
    EXPECT_THROW(grid_de00_per_pixel(ref, ColorGrid::filled(1, 4, a)), Error);
}

TEST(GridMetrics, MeanPixel) {
    const std::vector<HslColor> colors = random_colors(12, 5);
    std::vector<HslColor> shuffled = colors;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(9));
    EXPECT_NEAR(grid_de00_mean_pixel(ColorGrid(3, 4, colors), ColorGrid(3, 4, shuffled)), 0.0, 1e-9);

    const std::vector<HslColor> other = random_colors(12, 6);
    const double want = ciede2000(linear_rgb_to_lab(linear_average(colors)), linear_rgb_to_lab(linear_average(other)));
    EXPECT_NEAR(grid_de00_mean_pixel(ColorGrid(3, 4, colors), ColorGrid(3, 4, other)), want, 1e-9);
}

TEST(GridMetrics, MaskedMeanColor) {
    const ColorGrid g(1, 3, {HslColor(0, 1, 0.5), HslColor(240, 1, 0.5), HslColor(120, 1, 0.5)});
    const HslColor red = masked_mean_color(g, PatchMask(3, {0}));
    EXPECT_TRUE(hsl_near(red, HslColor(0, 1, 0.5), 1e-9, 1e-9, 1e-9));
    // Red and blue at equal linear weight give magenta at half linear intensity.
    const HslColor rb = masked_mean_color(g, PatchMask(3, {0, 1}));
    EXPECT_NEAR(rb.h, 300.0, 1e-9);
    EXPECT_NEAR(rb.s, 1.0, 1e-9);
    const double half = 1.055 * std::pow(0.5, 1.0 / 2.4) - 0.055;
    EXPECT_NEAR(rb.l, half / 2.0, 1e-9);
    EXPECT_THROW(masked_mean_color(g, PatchMask(3, {})), Error);
    EXPECT_THROW(masked_mean_color(g, PatchMask::all(4)), Error);
}

TEST(RenderPpm, Bytes) {
    const auto one = render_ppm(ColorGrid::filled(1, 1, HslColor(0, 1, 0.5)));
    const std::string header = "P6\n1 1\n255\n";
    ASSERT_EQ(one.size(), header.size() + 3);
    EXPECT_EQ(std::string(one.begin(), one.begin() + static_cast<long>(header.size())), header);
    EXPECT_EQ(one[header.size()], 0xFF);
    EXPECT_EQ(one[header.size() + 1], 0x00);
    EXPECT_EQ(one[header.size() + 2], 0x00);

    const auto bw = render_ppm(ColorGrid(1, 2, {HslColor(0, 0, 0), HslColor(0, 0, 1)}));
    const std::vector<std::uint8_t> want_bw = {'P', '6', '\n', '2', ' ', '1', '\n', '2', '5', '5', '\n',
                                               0, 0, 0, 255, 255, 255};
    EXPECT_EQ(bw, want_bw);

    const auto big = render_ppm(ColorGrid(1, 2, {HslColor(0, 0, 0), HslColor(0, 0, 1)}), 2);
    const std::string big_header = "P6\n4 2\n255\n";
    ASSERT_EQ(big.size(), big_header.size() + 3 * 8);
    for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t x = 0; x < 4; ++x)
            EXPECT_EQ(big[big_header.size() + 3 * (y * 4 + x)], x < 2 ? 0 : 255);
    EXPECT_THROW(render_ppm(ColorGrid::filled(1, 1, HslColor()), 0), Error);
}
