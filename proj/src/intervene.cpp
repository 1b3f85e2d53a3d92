// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "lcs/intervene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lcs/error.hpp"

namespace lcs {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

Vec3 mean_row(const LcsCoords& c) {
    Vec3 sum = Vec3::Zero();
    for (Eigen::Index i = 0; i < c.rows(); ++i)
        sum += c.row(i).transpose();
    return sum / static_cast<double>(c.rows());
}

HslColor mean_hsl(const std::vector<HslColor>& colors) {
    double sx = 0.0, sy = 0.0, ss = 0.0, sl = 0.0;
    for (const HslColor& y : colors) {
        sx += std::cos(y.h * kDegToRad);
        sy += std::sin(y.h * kDegToRad);
        ss += y.s;
        sl += y.l;
    }
    const double n = static_cast<double>(colors.size());
    const double hue = (sx == 0.0 && sy == 0.0) ? 0.0 : std::atan2(sy, sx) / kDegToRad;
    return {hue, ss / n, sl / n};
}

}  // namespace

PatchMask::PatchMask(std::size_t total, std::vector<std::size_t> selected)
    : total_(total), selected_(std::move(selected)) {
    std::sort(selected_.begin(), selected_.end());
    require(std::adjacent_find(selected_.begin(), selected_.end()) == selected_.end(),
            "patch mask has duplicate indices");
    require(selected_.empty() || selected_.back() < total_, "patch mask index out of range");
}

PatchMask PatchMask::all(std::size_t total) {
    std::vector<std::size_t> idx(total);
    for (std::size_t i = 0; i < total; ++i)
        idx[i] = i;
    return PatchMask(total, std::move(idx));
}

bool PatchMask::contains(std::size_t index) const {
    return std::binary_search(selected_.begin(), selected_.end(), index);
}

double gamma(int t, const Schedule& schedule) {
    require(schedule.total_steps >= 1, "schedule needs at least one step");
    require(t >= 0 && t <= schedule.total_steps,
            "timestep " + std::to_string(t) + " outside schedule [0, " + std::to_string(schedule.total_steps) + "]");
    switch (schedule.kind) {
        case ScheduleKind::linear:
            return 1.0 - static_cast<double>(t) / static_cast<double>(schedule.total_steps);
    }
    throw Error("unknown schedule kind");
}

std::string_view to_string(InterventionMode mode) {
    switch (mode) {
        case InterventionMode::type1: return "type1";
        case InterventionMode::type2: return "type2";
        case InterventionMode::interp: return "interp";
    }
    return "unknown";
}

InterventionMode parse_intervention_mode(std::string_view name) {
    for (InterventionMode m : {InterventionMode::type1, InterventionMode::type2, InterventionMode::interp})
        if (to_string(m) == name)
            return m;
    throw Error("unknown intervention mode: " + std::string(name));
}

LcsCoords type1(const LcsCoords& normalized, const TargetColor& target, const AnchorSet& anchors) {
    require(normalized.rows() >= 1, "intervention needs at least one patch");
    const Vec3 offset = encode(target, anchors) - mean_row(normalized);
    LcsCoords out = normalized;
    out.rowwise() += offset.transpose();
    return out;
}

LcsCoords type2(const LcsCoords& normalized, const TargetColor& target, const AnchorSet& anchors) {
    require(normalized.rows() >= 1, "intervention needs at least one patch");
    std::vector<HslColor> colors;
    colors.reserve(static_cast<std::size_t>(normalized.rows()));
    for (Eigen::Index i = 0; i < normalized.rows(); ++i)
        colors.push_back(decode(Vec3(normalized.row(i).transpose()), anchors));

    const HslColor mean = mean_hsl(colors);
    const double dh = hue_delta(mean.h, target.h);
    const double ds = target.s - mean.s;
    const double dl = target.l - mean.l;

    LcsCoords out(normalized.rows(), 3);
    for (Eigen::Index i = 0; i < normalized.rows(); ++i) {
        const HslColor& y = colors[static_cast<std::size_t>(i)];
        out.row(i) = encode(HslColor(y.h + dh, y.s + ds, y.l + dl), anchors).transpose();
    }
    return out;
}

LcsCoords blend(const LcsCoords& a, const LcsCoords& b, double g) {
    require(a.rows() == b.rows(), "blend inputs must have equal shapes");
    // Endpoints return a copy so signed zeros survive.
    if (g == 1.0)
        return a;
    if (g == 0.0)
        return b;
    return g * a + (1.0 - g) * b;
}

LcsCoords interpolated(const LcsCoords& normalized, const TargetColor& target, const AnchorSet& anchors, int t,
                       const Schedule& schedule) {
    const double g = gamma(t, schedule);
    return blend(type1(normalized, target, anchors), type2(normalized, target, anchors), g);
}

LatentTensor apply_intervention(const LatentTensor& z, int t, const TargetColor& target, const PatchMask& mask,
                                const InterventionContext& ctx, InterventionMode mode) {
    require(!mask.empty(), "intervention mask is empty");
    require(mask.total() == static_cast<std::size_t>(z.patches()), "mask size does not match patch count");
    require(z.dim() == ctx.model.dim(), "latent dimension does not match subspace model");
    require(ctx.stats.contains(t), "timestep " + std::to_string(t) + " is not in the stats table");

    const auto& rows = mask.selected();
    LcsCoords coords(static_cast<Eigen::Index>(rows.size()), 3);
    for (std::size_t k = 0; k < rows.size(); ++k)
        coords.row(static_cast<Eigen::Index>(k)) =
            project(Eigen::VectorXd(z.row(static_cast<Eigen::Index>(rows[k])).transpose()), ctx.model).transpose();

    const LcsCoords normalized = normalize(coords, t, ctx.stats);
    LcsCoords shifted;
    switch (mode) {
        case InterventionMode::type1: shifted = type1(normalized, target, ctx.anchors); break;
        case InterventionMode::type2: shifted = type2(normalized, target, ctx.anchors); break;
        case InterventionMode::interp:
            shifted = interpolated(normalized, target, ctx.anchors, t, ctx.schedule);
            break;
    }
    const LcsCoords updated = denormalize(shifted, t, ctx.stats);

    RowMatrix out = z.data();
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto r = static_cast<Eigen::Index>(rows[k]);
        out.row(r) = inject(Eigen::VectorXd(z.row(r).transpose()),
                            Vec3(updated.row(static_cast<Eigen::Index>(k)).transpose()), ctx.model)
                         .transpose();
    }
    return LatentTensor(std::move(out));
}

}  // namespace lcs
