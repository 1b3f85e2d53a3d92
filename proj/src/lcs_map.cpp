// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "lcs/lcs_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lcs/error.hpp"

namespace lcs {

namespace {

constexpr double kFlatBicone = 1e-6;
constexpr double kZeroChroma = 1e-9;

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// Segment index k with theta_k <= value < theta_{k+1}; the last segment wraps
// to theta_0 + 360. `knots` is increasing and starts at 0.
std::size_t find_segment(const std::array<double, 6>& knots, double value) {
    for (std::size_t k = 0; k + 1 < knots.size(); ++k)
        if (value >= knots[k] && value < knots[k + 1])
            return k;
    return knots.size() - 1;
}

double next_knot(const std::array<double, 6>& knots, std::size_t k) {
    return k + 1 < knots.size() ? knots[k + 1] : knots[0] + 360.0;
}

}  // namespace

std::string_view to_string(AnchorLabel label) {
    switch (label) {
        case AnchorLabel::red: return "red";
        case AnchorLabel::yellow: return "yellow";
        case AnchorLabel::green: return "green";
        case AnchorLabel::cyan: return "cyan";
        case AnchorLabel::blue: return "blue";
        case AnchorLabel::magenta: return "magenta";
        case AnchorLabel::black: return "black";
        case AnchorLabel::white: return "white";
    }
    return "unknown";
}

std::optional<AnchorLabel> parse_anchor_label(std::string_view name) {
    for (AnchorLabel label : kAnchorLabels)
        if (to_string(label) == name)
            return label;
    return std::nullopt;
}

double label_hue(AnchorLabel label) {
    switch (label) {
        case AnchorLabel::red: return 0.0;
        case AnchorLabel::yellow: return 60.0;
        case AnchorLabel::green: return 120.0;
        case AnchorLabel::cyan: return 180.0;
        case AnchorLabel::blue: return 240.0;
        case AnchorLabel::magenta: return 300.0;
        default: break;
    }
    throw Error("achromatic label has no hue: " + std::string(to_string(label)));
}

HslColor label_color(AnchorLabel label) {
    switch (label) {
        case AnchorLabel::black: return {0.0, 0.0, 0.0};
        case AnchorLabel::white: return {0.0, 0.0, 1.0};
        default: return {label_hue(label), 1.0, 0.5};
    }
}

AnchorSet::AnchorSet(std::array<HueAnchor, 6> hue_anchors, Vec3 black, Vec3 white)
    : anchors_(std::move(hue_anchors)), black_(std::move(black)), white_(std::move(white)) {
    require(black_.allFinite() && white_.allFinite(), "anchor points must be finite");
    axis_ = white_ - black_;
    const double axis_norm = axis_.norm();
    require(axis_norm > 1e-12, "degenerate anchors: black and white coincide");
    unit_axis_ = axis_ / axis_norm;

    std::array<bool, 6> seen{};
    for (const HueAnchor& a : anchors_) {
        require(a.label != AnchorLabel::black && a.label != AnchorLabel::white,
                "hue anchors must carry chromatic labels");
        const auto slot = static_cast<std::size_t>(label_hue(a.label) / 60.0);
        require(!seen[slot], "duplicate hue anchor label " + std::string(to_string(a.label)));
        seen[slot] = true;
        require(a.point.allFinite(), "anchor points must be finite");
    }

    auto chroma_of = [this](const Vec3& p) {
        const Vec3 rel = p - black_;
        return Vec3(rel - (rel.dot(axis_) / axis_.squaredNorm()) * axis_);
    };
    const double chroma_floor = 1e-12 * std::max(1.0, axis_norm);
    for (const HueAnchor& a : anchors_)
        require(chroma_of(a.point).norm() > chroma_floor,
                "degenerate anchor: " + std::string(to_string(a.label)) + " has zero chroma");

    auto find = [this](AnchorLabel label) {
        return *std::find_if(anchors_.begin(), anchors_.end(), [&](const HueAnchor& a) { return a.label == label; });
    };
    const Vec3 red_chroma = chroma_of(find(AnchorLabel::red).point);
    e1_ = red_chroma.normalized();
    e2_ = unit_axis_.cross(e1_);
    if (chroma_of(find(AnchorLabel::yellow).point).dot(e2_) < 0.0)
        e2_ = -e2_;

    std::array<std::pair<double, HueAnchor>, 6> measured;
    for (std::size_t k = 0; k < 6; ++k) {
        const double angle = anchors_[k].label == AnchorLabel::red ? 0.0 : angle_of(chroma_of(anchors_[k].point));
        measured[k] = {angle, anchors_[k]};
    }
    std::sort(measured.begin(), measured.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    for (std::size_t k = 0; k < 6; ++k) {
        anchors_[k] = measured[k].second;
        angles_[k] = measured[k].first;
        hues_[k] = label_hue(anchors_[k].label);
        chroma_[k] = chroma_of(anchors_[k].point);
        require(k == 0 || hues_[k] > hues_[k - 1], "anchor angular order is inconsistent with the hue labels");
    }
    for (std::size_t k = 0; k < 6; ++k) {
        const double gap = (k + 1 < 6 ? angles_[k + 1] : 360.0) - angles_[k];
        require(gap > 0.0 && gap < 180.0, "adjacent hue anchors must be less than 180 degrees apart");
    }
}

double AnchorSet::lightness_of(const Vec3& c) const { return (c - black_).dot(axis_) / axis_.squaredNorm(); }

double AnchorSet::angle_of(const Vec3& v) const {
    return wrap_degrees(std::atan2(v.dot(e2_), v.dot(e1_)) * 180.0 / std::numbers::pi);
}

AnchorSet build_anchors(std::span<const LabeledProbe> probes, const SubspaceModel& m) {
    require(probes.size() == kAnchorLabels.size(), "build_anchors needs exactly eight labeled probes");
    std::array<std::optional<Vec3>, 8> points;
    for (const LabeledProbe& p : probes) {
        auto& slot = points[static_cast<std::size_t>(p.label)];
        require(!slot, "duplicate probe label " + std::string(to_string(p.label)));
        slot = project(p.latent, m);
    }
    std::array<HueAnchor, 6> hues;
    for (std::size_t k = 0; k < 6; ++k)
        hues[k] = {kAnchorLabels[k], *points[k]};
    return AnchorSet(hues, *points[static_cast<std::size_t>(AnchorLabel::black)],
                     *points[static_cast<std::size_t>(AnchorLabel::white)]);
}

DecodedColor decode_raw(const Vec3& c, const AnchorSet& anchors) {
    require(c.allFinite(), "decode input must be finite");
    const double l = anchors.lightness_of(c);
    const Vec3 base = anchors.black() + l * anchors.axis();
    const Vec3 v = c - base;
    const double chroma = v.norm();
    const double bicone = 1.0 - std::abs(2.0 * l - 1.0);

    double hue = 0.0;
    double s = 0.0;
    std::size_t k = 0;
    double alpha = 0.0;
    if (chroma >= kZeroChroma) {
        std::array<double, 6> angles{};
        for (std::size_t i = 0; i < 6; ++i)
            angles[i] = anchors.angle(i);
        k = find_segment(angles, anchors.angle_of(v));

        // Intersect the chroma ray with the polygon edge chi_k -> chi_{k+1}.
        const std::size_t k1 = (k + 1) % 6;
        const Vec3& ck = anchors.chroma(k);
        const Vec3& ck1 = anchors.chroma(k1);
        const double vx = v.dot(anchors.e1()), vy = v.dot(anchors.e2());
        const double px = ck.dot(anchors.e1()), py = ck.dot(anchors.e2());
        const double dx = ck1.dot(anchors.e1()) - px, dy = ck1.dot(anchors.e2()) - py;
        const double denom = cross2(vx, vy, dx, dy);
        alpha = denom != 0.0 ? cross2(px, py, vx, vy) / denom : 0.0;
        alpha = std::clamp(alpha, 0.0, 1.0);

        const double theta_k = anchors.hue(k);
        const double theta_k1 = k1 == 0 ? anchors.hue(0) + 360.0 : anchors.hue(k1);
        hue = theta_k + alpha * (theta_k1 - theta_k);
    }
    if (bicone >= kFlatBicone) {
        const Vec3 polygon = anchors.chroma(k) + alpha * (anchors.chroma((k + 1) % 6) - anchors.chroma(k));
        s = chroma / (polygon.norm() * bicone);
    }
    return {HslColor(hue, s, l), s, l};
}

HslColor decode(const Vec3& c, const AnchorSet& anchors) { return decode_raw(c, anchors).color; }

Vec3 encode(const HslColor& y, const AnchorSet& anchors) {
    std::array<double, 6> hues{};
    for (std::size_t i = 0; i < 6; ++i)
        hues[i] = anchors.hue(i);
    const double h = wrap_degrees(y.h);
    const std::size_t k = find_segment(hues, h);
    const double theta_k = hues[k];
    const double alpha = (h - theta_k) / (next_knot(hues, k) - theta_k);
    const Vec3 polygon = anchors.chroma(k) + alpha * (anchors.chroma((k + 1) % 6) - anchors.chroma(k));

    // (1 - l) b + l w hits the apexes exactly at l = 0 and l = 1.
    const Vec3 base = (1.0 - y.l) * anchors.black() + y.l * anchors.white();
    const double bicone = 1.0 - std::abs(2.0 * y.l - 1.0);
    return base + (y.s * bicone) * polygon;
}

}  // namespace lcs
