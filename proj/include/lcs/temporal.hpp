// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lcs/subspace.hpp"

namespace lcs {

struct TimestepStats {
    int t = 0;
    Vec3 alpha = Vec3::Zero();
    Vec3 beta = Vec3::Zero();
};

/// Per-timestep shift (alpha) and per-axis scale (beta) of image-averaged
/// subspace coordinates for t = 0..T. The final row is the reference
/// distribution that normalization maps onto.
class StatsTable {
public:
    /// Throws lcs::Error unless rows cover t = 0..T contiguously (T >= 1),
    /// are finite, and every beta component is positive for t >= 1.
    explicit StatsTable(std::vector<TimestepStats> rows);

    int final_timestep() const { return static_cast<int>(rows_.size()) - 1; }
    bool contains(int t) const { return t >= 0 && t <= final_timestep(); }
    /// Throws lcs::Error if t is not in the table.
    const TimestepStats& at(int t) const;
    const std::vector<TimestepStats>& rows() const { return rows_; }

private:
    std::vector<TimestepStats> rows_;
};

/// The 51-row table measured on FLUX.1 [dev] over a 50-step Euler schedule.
const StatsTable& builtin_flux_stats();

/// Image-averaged coordinates of one generation, indexed by timestep.
using Trajectory = std::vector<Vec3>;

/// alpha_t = mean over images, beta_t = mean absolute deviation from alpha_t,
/// per axis. Needs at least two trajectories on the same timestep grid. A
/// zero scale at t = 0 is allowed (shared initial noise); a zero scale at
/// any later step throws lcs::Error("zero scale").
StatsTable fit_stats(const std::vector<Trajectory>& trajectories);

/// (c - alpha_t) / beta_t * beta_T + alpha_T, per row. Throws lcs::Error if
/// t is not in the table or a beta_t component is <= 1e-12.
LcsCoords normalize(const LcsCoords& c, int t, const StatsTable& stats);
Vec3 normalize(const Vec3& c, int t, const StatsTable& stats);

/// Exact inverse of normalize.
LcsCoords denormalize(const LcsCoords& c, int t, const StatsTable& stats);
Vec3 denormalize(const Vec3& c, int t, const StatsTable& stats);

}  // namespace lcs
