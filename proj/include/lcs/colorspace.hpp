// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace lcs {

/// sRGB color with channels in [0,1]. The constructor clamps.
struct RgbColor {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    constexpr RgbColor() = default;
    RgbColor(double red, double green, double blue);

    static RgbColor from_bytes(std::uint8_t red, std::uint8_t green, std::uint8_t blue);
    std::array<std::uint8_t, 3> to_bytes() const;
};

/// HSL color. Hue in degrees wrapped to [0,360); s and l clamped to [0,1].
struct HslColor {
    double h = 0.0;
    double s = 0.0;
    double l = 0.0;

    constexpr HslColor() = default;
    HslColor(double hue, double saturation, double lightness);
};

/// CIE L*a*b* under D65 / 2 degree observer.
struct LabColor {
    double L = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// Per-channel HSL difference: dH is the minimal circular distance in
/// degrees, dS and dL are fractions.
struct HslError {
    double dH = 0.0;
    double dS = 0.0;
    double dL = 0.0;
};

/// Wraps an angle in degrees into [0,360).
double wrap_degrees(double degrees);

/// Signed circular difference to - from, in (-180,180].
double hue_delta(double from, double to);

HslColor rgb_to_hsl(const RgbColor& c);
RgbColor hsl_to_rgb(const HslColor& c);

double srgb_to_linear(double v);
double linear_to_srgb(double v);

/// Linear-light RGB triple, unclamped. Used for physically meaningful
/// averaging of colors.
struct LinearRgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

LinearRgb to_linear(const RgbColor& c);
RgbColor from_linear(const LinearRgb& c);

LabColor linear_rgb_to_lab(const LinearRgb& c);
LabColor srgb_to_lab(const RgbColor& c);
LabColor hsl_to_lab(const HslColor& c);

/// CIEDE2000 color difference with unit weighting factors (kL = kC = kH = 1).
double ciede2000(const LabColor& x, const LabColor& y);

HslError hsl_error(const HslColor& a, const HslColor& b);

/// Parses "#RRGGBB" (the leading '#' is optional).
RgbColor parse_hex_color(std::string_view hex);
std::string to_hex(const RgbColor& c);

}  // namespace lcs
