// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "lcs/temporal.hpp"

#include <cmath>
#include <string>

#include "lcs/error.hpp"

namespace lcs {

namespace {

constexpr double kMinScale = 1e-12;

struct RawRow {
    int t;
    double alpha[3];
    double beta[3];
};

// Published FLUX shift and mean-magnitude tables; checked
// against data/flux_stats.json by the test suite.
constexpr RawRow kFluxStats[] = {
    {0, {2.3413, -2.3586, 0.4266}, {0.0163, 0.0172, 0.0295}},
    {1, {2.3574, -2.3833, 0.4644}, {0.0905, 0.0716, 0.0999}},
    {2, {2.3638, -2.3904, 0.4883}, {0.1345, 0.1123, 0.1544}},
    {3, {2.3734, -2.3951, 0.5122}, {0.1826, 0.1491, 0.2065}},
    {4, {2.3831, -2.3993, 0.5384}, {0.2360, 0.1899, 0.2630}},
    {5, {2.3925, -2.4026, 0.5647}, {0.2904, 0.2316, 0.3202}},
    {6, {2.4023, -2.4047, 0.5919}, {0.3471, 0.2749, 0.3793}},
    {7, {2.4124, -2.4060, 0.6198}, {0.4050, 0.3191, 0.4394}},
    {8, {2.4226, -2.4064, 0.6484}, {0.4640, 0.3641, 0.5003}},
    {9, {2.4330, -2.4060, 0.6772}, {0.5231, 0.4091, 0.5611}},
    {10, {2.4437, -2.4051, 0.7065}, {0.5834, 0.4547, 0.6228}},
    {11, {2.4546, -2.4035, 0.7367}, {0.6456, 0.5016, 0.6861}},
    {12, {2.4659, -2.4011, 0.7668}, {0.7077, 0.5481, 0.7488}},
    {13, {2.4775, -2.3981, 0.7974}, {0.7713, 0.5958, 0.8127}},
    {14, {2.4897, -2.4009, 0.8312}, {0.8410, 0.6496, 0.8866}},
    {15, {2.5021, -2.4036, 0.8656}, {0.9119, 0.7044, 0.9616}},
    {16, {2.5148, -2.4065, 0.9008}, {0.9845, 0.7605, 1.0386}},
    {17, {2.5277, -2.4093, 0.9364}, {1.0578, 0.8172, 1.1163}},
    {18, {2.5408, -2.4123, 0.9727}, {1.1325, 0.8750, 1.1957}},
    {19, {2.5542, -2.4154, 1.0099}, {1.2094, 0.9344, 1.2771}},
    {20, {2.5680, -2.4186, 1.0481}, {1.2880, 0.9953, 1.3606}},
    {21, {2.5820, -2.4218, 1.0868}, {1.3680, 1.0571, 1.4453}},
    {22, {2.5963, -2.4252, 1.1263}, {1.4498, 1.1205, 1.5321}},
    {23, {2.6110, -2.4288, 1.1672}, {1.5341, 1.1858, 1.6216}},
    {24, {2.6261, -2.4324, 1.2090}, {1.6206, 1.2526, 1.7131}},
    {25, {2.6416, -2.4363, 1.2520}, {1.7094, 1.3214, 1.8072}},
    {26, {2.6575, -2.4403, 1.2957}, {1.7998, 1.3913, 1.9030}},
    {27, {2.6738, -2.4444, 1.3406}, {1.8927, 1.4633, 2.0014}},
    {28, {2.6904, -2.4485, 1.3865}, {1.9879, 1.5370, 2.1022}},
    {29, {2.7074, -2.4529, 1.4336}, {2.0854, 1.6126, 2.2056}},
    {30, {2.7250, -2.4574, 1.4818}, {2.1853, 1.6900, 2.3114}},
    {31, {2.7432, -2.4621, 1.5314}, {2.2881, 1.7696, 2.4202}},
    {32, {2.7618, -2.4669, 1.5823}, {2.3939, 1.8515, 2.5321}},
    {33, {2.7810, -2.4720, 1.6344}, {2.5021, 1.9354, 2.6467}},
    {34, {2.8006, -2.4771, 1.6878}, {2.6133, 2.0215, 2.7642}},
    {35, {2.8209, -2.4826, 1.7430}, {2.7280, 2.1106, 2.8857}},
    {36, {2.8418, -2.4883, 1.7995}, {2.8455, 2.2017, 3.0101}},
    {37, {2.8631, -2.4944, 1.8578}, {2.9668, 2.2957, 3.1386}},
    {38, {2.8853, -2.5005, 1.9179}, {3.0921, 2.3929, 3.2712}},
    {39, {2.9080, -2.5066, 1.9793}, {3.2204, 2.4922, 3.4067}},
    {40, {2.9313, -2.5132, 2.0426}, {3.3523, 2.5946, 3.5464}},
    {41, {2.9555, -2.5199, 2.1082}, {3.4888, 2.7006, 3.6911}},
    {42, {2.9804, -2.5268, 2.1756}, {3.6292, 2.8097, 3.8398}},
    {43, {3.0060, -2.5338, 2.2450}, {3.7741, 2.9222, 3.9931}},
    {44, {3.0328, -2.5411, 2.3172}, {3.9247, 3.0394, 4.1527}},
    {45, {3.0603, -2.5486, 2.3914}, {4.0793, 3.1597, 4.3168}},
    {46, {3.0889, -2.5561, 2.4682}, {4.2393, 3.2843, 4.4866}},
    {47, {3.1189, -2.5640, 2.5482}, {4.4053, 3.4142, 4.6636}},
    {48, {3.1497, -2.5725, 2.6302}, {4.5760, 3.5480, 4.8461}},
    {49, {3.1824, -2.5796, 2.7175}, {4.7541, 3.6886, 5.0383}},
    {50, {3.2152, -2.5889, 2.8050}, {4.9407, 3.8364, 5.2390}},
};

Vec3 scale_of(const TimestepStats& row, int t) {
    for (int i = 0; i < 3; ++i)
        if (!(row.beta(i) > kMinScale))
            throw Error("degenerate scale at timestep " + std::to_string(t));
    return row.beta;
}

}  // namespace

StatsTable::StatsTable(std::vector<TimestepStats> rows) : rows_(std::move(rows)) {
    require(rows_.size() >= 2, "stats table needs timesteps 0..T with T >= 1");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const TimestepStats& row = rows_[i];
        require(row.t == static_cast<int>(i), "stats table timesteps must be contiguous from 0");
        require(row.alpha.allFinite() && row.beta.allFinite(), "stats table has non-finite entries");
        for (int a = 0; a < 3; ++a) {
            require(row.beta(a) >= 0.0, "stats table has a negative scale");
            if (i > 0)
                require(row.beta(a) > 0.0, "stats table scale must be positive for t >= 1");
        }
    }
}

const TimestepStats& StatsTable::at(int t) const {
    if (!contains(t))
        throw Error("timestep " + std::to_string(t) + " is not in the stats table");
    return rows_[static_cast<std::size_t>(t)];
}

const StatsTable& builtin_flux_stats() {
    static const StatsTable table = [] {
        std::vector<TimestepStats> rows;
        for (const RawRow& r : kFluxStats)
            rows.push_back({r.t, Vec3(r.alpha[0], r.alpha[1], r.alpha[2]), Vec3(r.beta[0], r.beta[1], r.beta[2])});
        return StatsTable(std::move(rows));
    }();
    return table;
}

StatsTable fit_stats(const std::vector<Trajectory>& trajectories) {
    require(trajectories.size() >= 2, "fit_stats needs at least two trajectories");
    const std::size_t steps = trajectories.front().size();
    require(steps >= 2, "trajectories need at least two timesteps");
    for (const Trajectory& tr : trajectories)
        require(tr.size() == steps, "trajectories have mismatched timestep grids");

    const double n = static_cast<double>(trajectories.size());
    std::vector<TimestepStats> rows(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        Vec3 alpha = Vec3::Zero();
        for (const Trajectory& tr : trajectories)
            alpha += tr[t];
        alpha /= n;
        Vec3 beta = Vec3::Zero();
        for (const Trajectory& tr : trajectories)
            beta += (tr[t] - alpha).cwiseAbs();
        beta /= n;
        if (t > 0 && !(beta.minCoeff() > kMinScale))
            throw Error("zero scale at timestep " + std::to_string(t));
        rows[t] = {static_cast<int>(t), alpha, beta};
    }
    return StatsTable(std::move(rows));
}

Vec3 normalize(const Vec3& c, int t, const StatsTable& stats) {
    const TimestepStats& row = stats.at(t);
    const Vec3 beta_t = scale_of(row, t);
    if (t == stats.final_timestep())
        return c;
    const TimestepStats& ref = stats.at(stats.final_timestep());
    return ((c - row.alpha).cwiseQuotient(beta_t)).cwiseProduct(ref.beta) + ref.alpha;
}

Vec3 denormalize(const Vec3& c, int t, const StatsTable& stats) {
    const TimestepStats& row = stats.at(t);
    const Vec3 beta_t = scale_of(row, t);
    if (t == stats.final_timestep())
        return c;
    const TimestepStats& ref = stats.at(stats.final_timestep());
    return ((c - ref.alpha).cwiseQuotient(ref.beta)).cwiseProduct(beta_t) + row.alpha;
}

LcsCoords normalize(const LcsCoords& c, int t, const StatsTable& stats) {
    scale_of(stats.at(t), t);
    LcsCoords out(c.rows(), 3);
    for (Eigen::Index i = 0; i < c.rows(); ++i)
        out.row(i) = normalize(Vec3(c.row(i).transpose()), t, stats).transpose();
    return out;
}

LcsCoords denormalize(const LcsCoords& c, int t, const StatsTable& stats) {
    scale_of(stats.at(t), t);
    LcsCoords out(c.rows(), 3);
    for (Eigen::Index i = 0; i < c.rows(); ++i)
        out.row(i) = denormalize(Vec3(c.row(i).transpose()), t, stats).transpose();
    return out;
}

}  // namespace lcs
