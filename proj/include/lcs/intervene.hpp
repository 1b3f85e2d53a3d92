// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "lcs/lcs_map.hpp"
#include "lcs/temporal.hpp"

namespace lcs {

using TargetColor = HslColor;

/// Set of selected patch indices out of `total` patches.
class PatchMask {
public:
    /// Throws lcs::Error on out-of-range or duplicate indices. Indices are
    /// kept sorted.
    PatchMask(std::size_t total, std::vector<std::size_t> selected);
    static PatchMask all(std::size_t total);

    std::size_t total() const { return total_; }
    const std::vector<std::size_t>& selected() const { return selected_; }
    bool empty() const { return selected_.empty(); }
    bool contains(std::size_t index) const;

private:
    std::size_t total_ = 0;
    std::vector<std::size_t> selected_;
};

enum class ScheduleKind { linear };

/// Blending schedule between the uniform shift (noise end) and the HSL
/// shift (image end).
struct Schedule {
    int total_steps = 50;
    ScheduleKind kind = ScheduleKind::linear;
};

/// gamma_0 = 1, gamma_T = 0, non-increasing. Linear: 1 - t/T.
/// Throws lcs::Error if t is outside [0, T] or T < 1.
double gamma(int t, const Schedule& schedule);

enum class InterventionMode { type1, type2, interp };

std::string_view to_string(InterventionMode mode);
InterventionMode parse_intervention_mode(std::string_view name);

/// Translates every patch by E(target) - mean, so the output mean is
/// E(target) and all pairwise differences are kept.
LcsCoords type1(const LcsCoords& normalized, const TargetColor& target, const AnchorSet& anchors);

/// Decodes each patch, shifts all of them by target - mean in HSL space and
/// re-encodes. The hue mean is circular and the hue shift takes the short
/// way round; s and l are clamped to [0,1] after the shift.
LcsCoords type2(const LcsCoords& normalized, const TargetColor& target, const AnchorSet& anchors);

/// gamma * a + (1 - gamma) * b, elementwise.
LcsCoords blend(const LcsCoords& a, const LcsCoords& b, double gamma);

LcsCoords interpolated(const LcsCoords& normalized, const TargetColor& target, const AnchorSet& anchors, int t,
                       const Schedule& schedule);

struct InterventionContext {
    const SubspaceModel& model;
    const AnchorSet& anchors;
    const StatsTable& stats;
    Schedule schedule;
};

/// project -> normalize -> intervene -> denormalize -> inject, applied to the
/// masked patches only. Means are taken over masked patches. Unmasked rows
/// are copied unchanged, and each masked patch only moves inside span(B).
/// Throws lcs::Error for an empty mask, a mask of the wrong size, or a
/// timestep missing from the stats table.
LatentTensor apply_intervention(const LatentTensor& z, int t, const TargetColor& target, const PatchMask& mask,
                                const InterventionContext& ctx, InterventionMode mode);

}  // namespace lcs
