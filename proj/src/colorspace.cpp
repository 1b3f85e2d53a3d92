// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "lcs/colorspace.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "lcs/error.hpp"

namespace lcs {

namespace {

constexpr double kPi = std::numbers::pi;

// sRGB (D65) to XYZ.
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// Reference white is the image of RGB (1,1,1), so sRGB white lands exactly
// on L = 100, a = b = 0.
constexpr double kWhiteX = kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2];
constexpr double kWhiteY = kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2];
constexpr double kWhiteZ = kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2];

constexpr double kLabEpsilon = 216.0 / 24389.0;
constexpr double kLabKappa = 24389.0 / 27.0;

double clamp01(double v) {
    if (!(v > 0.0))
        return 0.0;
    return v < 1.0 ? v : 1.0;
}

double lab_f(double t) {
    return t > kLabEpsilon ? std::cbrt(t) : (kLabKappa * t + 16.0) / 116.0;
}

double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }

int hex_digit(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    return -1;
}

}  // namespace

RgbColor::RgbColor(double red, double green, double blue)
    : r(clamp01(red)), g(clamp01(green)), b(clamp01(blue)) {}

RgbColor RgbColor::from_bytes(std::uint8_t red, std::uint8_t green, std::uint8_t blue) {
    return {red / 255.0, green / 255.0, blue / 255.0};
}

std::array<std::uint8_t, 3> RgbColor::to_bytes() const {
    auto q = [](double v) { return static_cast<std::uint8_t>(std::lround(clamp01(v) * 255.0)); };
    return {q(r), q(g), q(b)};
}

HslColor::HslColor(double hue, double saturation, double lightness)
    : h(wrap_degrees(hue)), s(clamp01(saturation)), l(clamp01(lightness)) {}

double wrap_degrees(double degrees) {
    double w = std::fmod(degrees, 360.0);
    if (w < 0.0)
        w += 360.0;
    // fmod of a tiny negative value plus 360 rounds to exactly 360.
    if (w >= 360.0)
        w = 0.0;
    return w;
}

double hue_delta(double from, double to) {
    double d = wrap_degrees(to - from);
    return d > 180.0 ? d - 360.0 : d;
}

HslColor rgb_to_hsl(const RgbColor& c) {
    const double hi = std::max({c.r, c.g, c.b});
    const double lo = std::min({c.r, c.g, c.b});
    const double l = 0.5 * (hi + lo);
    const double chroma = hi - lo;
    if (chroma <= 0.0)
        return {0.0, 0.0, l};

    const double s = chroma / (1.0 - std::abs(2.0 * l - 1.0));
    double sector;
    if (hi == c.r) {
        sector = (c.g - c.b) / chroma;
        if (sector < 0.0)
            sector += 6.0;
    } else if (hi == c.g) {
        sector = (c.b - c.r) / chroma + 2.0;
    } else {
        sector = (c.r - c.g) / chroma + 4.0;
    }
    return {60.0 * sector, s, l};
}

RgbColor hsl_to_rgb(const HslColor& c) {
    const double chroma = (1.0 - std::abs(2.0 * c.l - 1.0)) * c.s;
    const double sector = c.h / 60.0;
    const double x = chroma * (1.0 - std::abs(std::fmod(sector, 2.0) - 1.0));
    const double m = c.l - 0.5 * chroma;

    double r = 0.0, g = 0.0, b = 0.0;
    switch (static_cast<int>(sector)) {
        case 0: r = chroma; g = x; break;
        case 1: r = x; g = chroma; break;
        case 2: g = chroma; b = x; break;
        case 3: g = x; b = chroma; break;
        case 4: r = x; b = chroma; break;
        default: r = chroma; b = x; break;
    }
    return {r + m, g + m, b + m};
}

double srgb_to_linear(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double v) {
    return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

LinearRgb to_linear(const RgbColor& c) {
    return {srgb_to_linear(c.r), srgb_to_linear(c.g), srgb_to_linear(c.b)};
}

RgbColor from_linear(const LinearRgb& c) {
    return {linear_to_srgb(c.r), linear_to_srgb(c.g), linear_to_srgb(c.b)};
}

LabColor linear_rgb_to_lab(const LinearRgb& c) {
    const double x = kRgbToXyz[0][0] * c.r + kRgbToXyz[0][1] * c.g + kRgbToXyz[0][2] * c.b;
    const double y = kRgbToXyz[1][0] * c.r + kRgbToXyz[1][1] * c.g + kRgbToXyz[1][2] * c.b;
    const double z = kRgbToXyz[2][0] * c.r + kRgbToXyz[2][1] * c.g + kRgbToXyz[2][2] * c.b;
    const double fx = lab_f(x / kWhiteX);
    const double fy = lab_f(y / kWhiteY);
    const double fz = lab_f(z / kWhiteZ);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabColor srgb_to_lab(const RgbColor& c) { return linear_rgb_to_lab(to_linear(c)); }

LabColor hsl_to_lab(const HslColor& c) { return srgb_to_lab(hsl_to_rgb(c)); }

double ciede2000(const LabColor& x, const LabColor& y) {
    const double c1 = std::hypot(x.a, x.b);
    const double c2 = std::hypot(y.a, y.b);
    const double c_bar7 = std::pow(0.5 * (c1 + c2), 7.0);
    const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + std::pow(25.0, 7.0))));

    const double a1 = (1.0 + g) * x.a;
    const double a2 = (1.0 + g) * y.a;
    const double cp1 = std::hypot(a1, x.b);
    const double cp2 = std::hypot(a2, y.b);

    auto hue_angle = [](double b, double a) {
        if (a == 0.0 && b == 0.0)
            return 0.0;
        return wrap_degrees(rad2deg(std::atan2(b, a)));
    };
    const double hp1 = hue_angle(x.b, a1);
    const double hp2 = hue_angle(y.b, a2);

    const double dl = y.L - x.L;
    const double dc = cp2 - cp1;

    double dh = 0.0;
    const bool achromatic = cp1 * cp2 == 0.0;
    if (!achromatic) {
        dh = hp2 - hp1;
        if (dh > 180.0)
            dh -= 360.0;
        else if (dh < -180.0)
            dh += 360.0;
    }
    const double dH = 2.0 * std::sqrt(cp1 * cp2) * std::sin(deg2rad(0.5 * dh));

    const double l_bar = 0.5 * (x.L + y.L);
    const double c_bar = 0.5 * (cp1 + cp2);
    double h_bar = hp1 + hp2;
    if (!achromatic) {
        if (std::abs(hp1 - hp2) <= 180.0)
            h_bar *= 0.5;
        else if (hp1 + hp2 < 360.0)
            h_bar = 0.5 * (hp1 + hp2 + 360.0);
        else
            h_bar = 0.5 * (hp1 + hp2 - 360.0);
    }

    const double t = 1.0 - 0.17 * std::cos(deg2rad(h_bar - 30.0)) + 0.24 * std::cos(deg2rad(2.0 * h_bar)) +
                     0.32 * std::cos(deg2rad(3.0 * h_bar + 6.0)) - 0.20 * std::cos(deg2rad(4.0 * h_bar - 63.0));
    const double d_theta = 30.0 * std::exp(-std::pow((h_bar - 275.0) / 25.0, 2.0));
    const double c_bar_p7 = std::pow(c_bar, 7.0);
    const double rc = 2.0 * std::sqrt(c_bar_p7 / (c_bar_p7 + std::pow(25.0, 7.0)));
    const double l50 = (l_bar - 50.0) * (l_bar - 50.0);
    const double sl = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
    const double sc = 1.0 + 0.045 * c_bar;
    const double sh = 1.0 + 0.015 * c_bar * t;
    const double rt = -std::sin(deg2rad(2.0 * d_theta)) * rc;

    const double tl = dl / sl;
    const double tc = dc / sc;
    const double th = dH / sh;
    return std::sqrt(tl * tl + tc * tc + th * th + rt * tc * th);
}

HslError hsl_error(const HslColor& a, const HslColor& b) {
    const double d = std::abs(wrap_degrees(a.h) - wrap_degrees(b.h));
    return {std::min(d, 360.0 - d), std::abs(a.s - b.s), std::abs(a.l - b.l)};
}

RgbColor parse_hex_color(std::string_view hex) {
    if (!hex.empty() && hex.front() == '#')
        hex.remove_prefix(1);
    require(hex.size() == 6, "hex color must have exactly 6 hex digits");
    std::array<std::uint8_t, 3> bytes{};
    for (std::size_t i = 0; i < 3; ++i) {
        const int hi = hex_digit(hex[2 * i]);
        const int lo = hex_digit(hex[2 * i + 1]);
        require(hi >= 0 && lo >= 0, "invalid hex digit in color");
        bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return RgbColor::from_bytes(bytes[0], bytes[1], bytes[2]);
}

std::string to_hex(const RgbColor& c) {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    std::string out = "#";
    for (std::uint8_t v : c.to_bytes()) {
        out.push_back(kDigits[v >> 4]);
        out.push_back(kDigits[v & 0xF]);
    }
    return out;
}

}  // namespace lcs
