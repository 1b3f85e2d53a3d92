// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "lcs/colorspace.hpp"
#include "lcs/subspace.hpp"

namespace lcs {

enum class AnchorLabel { red, yellow, green, cyan, blue, magenta, black, white };

std::string_view to_string(AnchorLabel label);
std::optional<AnchorLabel> parse_anchor_label(std::string_view name);

/// Standard HSL hue of a chromatic label (red 0, yellow 60, ... magenta 300).
double label_hue(AnchorLabel label);

/// The probe colors as HSL: full saturation at l = 0.5 for hues, l = 0 / 1
/// for black / white.
HslColor label_color(AnchorLabel label);

inline constexpr std::array<AnchorLabel, 8> kAnchorLabels = {
    AnchorLabel::red,  AnchorLabel::yellow,  AnchorLabel::green, AnchorLabel::cyan,
    AnchorLabel::blue, AnchorLabel::magenta, AnchorLabel::black, AnchorLabel::white,
};

struct HueAnchor {
    AnchorLabel label;
    Vec3 point;
};

/// Six hue anchors plus the black and white points in subspace coordinates,
/// with the derived achromatic axis and chromatic-plane frame.
///
/// Hue anchors are stored in order of increasing chromatic angle. Each
/// anchor's chroma vector is taken relative to its own projection on the
/// achromatic axis, so anchors need not sit at mid-lightness.
class AnchorSet {
public:
    /// Throws lcs::Error if black and white coincide, an anchor has zero
    /// chroma, the labels are not the six distinct hues, or the measured
    /// angular order disagrees with the label hues.
    AnchorSet(std::array<HueAnchor, 6> hue_anchors, Vec3 black, Vec3 white);

    const std::array<HueAnchor, 6>& hue_anchors() const { return anchors_; }
    const Vec3& black() const { return black_; }
    const Vec3& white() const { return white_; }
    const Vec3& axis() const { return axis_; }
    const Vec3& unit_axis() const { return unit_axis_; }
    const Vec3& e1() const { return e1_; }
    const Vec3& e2() const { return e2_; }

    /// Label hue theta_k of the k-th anchor (increasing, theta_0 = 0).
    double hue(std::size_t k) const { return hues_[k]; }
    /// Measured chromatic angle of the k-th anchor in the (e1, e2) frame.
    double angle(std::size_t k) const { return angles_[k]; }
    /// Chroma vector of the k-th anchor.
    const Vec3& chroma(std::size_t k) const { return chroma_[k]; }

    /// Axial coordinate ((c - b) . a) / |a|^2.
    double lightness_of(const Vec3& c) const;
    /// Angle in degrees [0,360) of a vector's component in the chroma plane.
    double angle_of(const Vec3& v) const;

private:
    std::array<HueAnchor, 6> anchors_;
    Vec3 black_;
    Vec3 white_;
    Vec3 axis_;
    Vec3 unit_axis_;
    Vec3 e1_;
    Vec3 e2_;
    std::array<double, 6> hues_{};
    std::array<double, 6> angles_{};
    std::array<Vec3, 6> chroma_;
};

struct LabeledProbe {
    AnchorLabel label;
    Eigen::VectorXd latent;
};

/// Projects the eight labeled probe latents and builds the anchor set.
/// Input order does not matter; each label must appear exactly once.
AnchorSet build_anchors(std::span<const LabeledProbe> probes, const SubspaceModel& m);

/// Decoded color plus the unclamped saturation and lightness.
struct DecodedColor {
    HslColor color;
    double raw_s = 0.0;
    double raw_l = 0.0;
};

/// LCS -> HSL. Lightness is the axial projection. The hue comes from the
/// polygon edge hit by the chroma ray, interpolated linearly along that edge
/// between the two anchor hues. Saturation is chroma divided by the polygon
/// chroma at that hue times the bicone factor 1 - |2l - 1|.
///
/// Conventions at the singular points: bicone factor below 1e-6 gives s = 0,
/// chroma below 1e-9 gives h = 0. s and l are clamped to [0,1] after being
/// computed from the unclamped geometry. Throws lcs::Error on non-finite input.
DecodedColor decode_raw(const Vec3& c, const AnchorSet& anchors);
HslColor decode(const Vec3& c, const AnchorSet& anchors);

/// HSL -> LCS: c = c_L + s (1 - |2l - 1|) chi_H, where chi_H is the chroma
/// of the point at hue h on the anchor polygon.
Vec3 encode(const HslColor& y, const AnchorSet& anchors);

}  // namespace lcs
