// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "lcs/toyflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lcs/error.hpp"
#include "lcs/palette.hpp"

namespace lcs::toy {

namespace {

constexpr double kFlatBicone = 1e-6;
constexpr double kZeroChroma = 1e-12;

// Unit directions of the red, green and blue primaries in the chroma plane.
const Eigen::Vector2d& primary(int c) {
    static const Eigen::Vector2d dirs[3] = {
        {1.0, 0.0},
        {std::cos(2.0 * std::numbers::pi / 3.0), std::sin(2.0 * std::numbers::pi / 3.0)},
        {std::cos(4.0 * std::numbers::pi / 3.0), std::sin(4.0 * std::numbers::pi / 3.0)},
    };
    return dirs[c];
}

// Box-Muller over mt19937_64, so sequences do not depend on the standard
// library's normal_distribution.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace

ToyEmbedder::ToyEmbedder(const EmbedderConfig& config) : config_(config) {
    require(config_.dim >= 4, "toy embedder needs d >= 4");
    require(config_.lightness_scale > 0.0 && config_.chroma_scale > 0.0, "toy embedder scales must be positive");

    GaussianSource rng(config_.seed);
    Eigen::MatrixXd raw(config_.dim, 3);
    for (Eigen::Index i = 0; i < raw.rows(); ++i)
        for (Eigen::Index j = 0; j < 3; ++j)
            raw(i, j) = rng.next();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    lift_ = qr.householderQ() * Eigen::MatrixXd::Identity(config_.dim, 3);

    Eigen::VectorXd r(config_.dim);
    for (Eigen::Index i = 0; i < r.size(); ++i)
        r(i) = rng.next();
    const Eigen::VectorXd complement = r - lift_ * (lift_.transpose() * r);
    // Put mid-grey (g = 0.5 a0) on the span's origin.
    offset_ = complement - lift_ * Vec3(0.5 * config_.lightness_scale, 0.0, 0.0);
}

Vec3 ToyEmbedder::bicone(const HslColor& y) const {
    const RgbColor full = hsl_to_rgb(HslColor(y.h, 1.0, 0.5));
    const Eigen::Vector2d hue_dir = full.r * primary(0) + full.g * primary(1) + full.b * primary(2);
    const double radius = y.s * (1.0 - std::abs(2.0 * y.l - 1.0)) * config_.chroma_scale;
    return {y.l * config_.lightness_scale, radius * hue_dir.x(), radius * hue_dir.y()};
}

Eigen::VectorXd embed_hsl(const HslColor& y, const ToyEmbedder& e) { return e.offset() + e.lift() * e.bicone(y); }

LatentTensor embed_image(const ColorGrid& pixels, const ToyEmbedder& e) {
    RowMatrix data(static_cast<Eigen::Index>(pixels.size()), e.dim());
    for (std::size_t i = 0; i < pixels.size(); ++i)
        data.row(static_cast<Eigen::Index>(i)) = embed_hsl(pixels[i], e).transpose();
    return LatentTensor(std::move(data));
}

HslColor toy_decode(const Eigen::VectorXd& z, const ToyEmbedder& e) {
    require(z.size() == e.dim(), "latent dimension does not match toy embedder");
    const Vec3 g = e.lift().transpose() * (z - e.offset());
    const double l = g.x() / e.config().lightness_scale;
    const Eigen::Vector2d w(g.y() / e.config().chroma_scale, g.z() / e.config().chroma_scale);

    // Hexcone coordinates of the chroma vector; they sum to zero and their
    // spread max - min is the hexagonal chroma.
    double rgb[3];
    for (int c = 0; c < 3; ++c)
        rgb[c] = 2.0 / 3.0 * w.dot(primary(c));
    const double hi = std::max({rgb[0], rgb[1], rgb[2]});
    const double lo = std::min({rgb[0], rgb[1], rgb[2]});
    const double chroma = hi - lo;

    double hue = 0.0;
    if (chroma > kZeroChroma) {
        if (hi == rgb[0])
            hue = 60.0 * std::fmod((rgb[1] - rgb[2]) / chroma + 6.0, 6.0);
        else if (hi == rgb[1])
            hue = 60.0 * ((rgb[2] - rgb[0]) / chroma + 2.0);
        else
            hue = 60.0 * ((rgb[0] - rgb[1]) / chroma + 4.0);
    }
    const double bicone = 1.0 - std::abs(2.0 * l - 1.0);
    const double s = bicone >= kFlatBicone ? chroma / bicone : 0.0;
    return {hue, s, l};
}

ColorGrid toy_decode_image(const LatentTensor& z, GridDims dims, const ToyEmbedder& e) {
    require(dims.height * dims.width == static_cast<std::size_t>(z.patches()), "grid does not match patch count");
    std::vector<HslColor> cells;
    cells.reserve(static_cast<std::size_t>(z.patches()));
    for (Eigen::Index i = 0; i < z.patches(); ++i)
        cells.push_back(toy_decode(z.row(i).transpose(), e));
    return ColorGrid(dims.height, dims.width, std::move(cells));
}

HslColor hsv_to_hsl(double hue, double saturation, double value) {
    const double l = value * (1.0 - 0.5 * saturation);
    const double denom = std::min(l, 1.0 - l);
    const double s = denom > 0.0 ? (value - l) / denom : 0.0;
    return {hue, s, l};
}

LatentTensor gaussian_latent(Eigen::Index patches, Eigen::Index dim, std::uint64_t seed) {
    GaussianSource rng(seed);
    RowMatrix data(patches, dim);
    for (Eigen::Index i = 0; i < patches; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            data(i, j) = rng.next();
    return LatentTensor(std::move(data));
}

LatentTensor sample_path(const LatentTensor& z1, const LatentTensor& z0, int t, int total_steps) {
    require(z1.patches() == z0.patches() && z1.dim() == z0.dim(), "path endpoints have different shapes");
    require(total_steps >= 1 && t >= 0 && t <= total_steps, "timestep outside [0, T]");
    if (t == 0)
        return z0;
    if (t == total_steps)
        return z1;
    const double tau = static_cast<double>(t) / static_cast<double>(total_steps);
    return LatentTensor((1.0 - tau) * z0.data() + tau * z1.data());
}

AttractorField::AttractorField(std::vector<LatentTensor> attractors, Basis3 lift)
    : attractors_(std::move(attractors)), lift_(std::move(lift)) {
    require(!attractors_.empty(), "attractor field needs at least one attractor");
    for (const LatentTensor& a : attractors_) {
        require(a.patches() == attractors_.front().patches() && a.dim() == attractors_.front().dim(),
                "attractors must share one shape");
    }
    require(lift_.rows() == attractors_.front().dim(), "lift dimension does not match attractors");
}

std::size_t AttractorField::nearest(const LatentTensor& z) const {
    require(z.patches() == attractors_.front().patches() && z.dim() == attractors_.front().dim(),
            "latent shape does not match attractor field");
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < attractors_.size(); ++k) {
        const double dist = ((z.data() - attractors_[k].data()) * lift_).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            best = k;
        }
    }
    return best;
}

std::vector<LatentTensor> integrate(const LatentTensor& z_start, int start, const AttractorField& field,
                                    const FlowOptions& options) {
    const int total = options.total_steps;
    require(total >= 1, "flow needs at least one step");
    require(start >= 0 && start <= total, "start timestep outside [0, T]");
    require(options.epsilon >= 0.0, "epsilon must be non-negative");

    std::vector<LatentTensor> frames;
    frames.reserve(static_cast<std::size_t>(total - start + 1));
    frames.push_back(z_start);
    const double dt = 1.0 / static_cast<double>(total);
    for (int k = start; k < total; ++k) {
        const LatentTensor& z = frames.back();
        const LatentTensor& target = field[field.nearest(z)];
        const double tau = static_cast<double>(k) * dt;
        const double rate = dt / (1.0 - tau + options.epsilon);
        frames.emplace_back(z.data() + rate * (target.data() - z.data()));
    }
    return frames;
}

std::vector<LatentTensor> generate(const LatentTensor& z0, const AttractorField& field, const FlowOptions& options) {
    return integrate(z0, 0, field, options);
}

ProbeSet make_probe_set(const ToyEmbedder& e) {
    ProbeSet set;
    for (AnchorLabel label : kAnchorLabels)
        set.anchors.push_back({label, embed_hsl(label_color(label), e)});

    constexpr int kSteps = 8;
    set.lattice.resize(kSteps * kSteps * kSteps, e.dim());
    Eigen::Index row = 0;
    for (int hi = 0; hi < kSteps; ++hi) {
        for (int si = 0; si < kSteps; ++si) {
            for (int vi = 0; vi < kSteps; ++vi) {
                const HslColor y = hsv_to_hsl(360.0 * hi / kSteps, si / (kSteps - 1.0), vi / (kSteps - 1.0));
                set.lattice_colors.push_back(y);
                set.lattice.row(row++) = embed_hsl(y, e).transpose();
            }
        }
    }
    return set;
}

OrientationProbes orientation_probes(const ProbeSet& probes) {
    auto find = [&](AnchorLabel label) {
        for (const LabeledProbe& p : probes.anchors)
            if (p.label == label)
                return p.latent;
        throw Error("probe set lacks " + std::string(to_string(label)));
    };
    return {find(AnchorLabel::white), find(AnchorLabel::black), find(AnchorLabel::red), find(AnchorLabel::yellow)};
}

std::vector<NamedTrajectory> simulate_palette(const ToyEmbedder& e, GridDims dims, const FlowOptions& options,
                                              std::uint64_t seed) {
    const auto patches = static_cast<Eigen::Index>(dims.height * dims.width);
    require(patches > 0, "grid must be non-empty");
    const LatentTensor z0 = gaussian_latent(patches, e.dim(), seed);
    std::vector<NamedTrajectory> out;
    for (const NamedColor& c : timestep_palette()) {
        const HslColor color = c.hsl();
        AttractorField field({embed_image(ColorGrid::filled(dims.height, dims.width, color), e)}, e.lift());
        out.push_back({std::string(c.name), color, generate(z0, field, options)});
    }
    return out;
}

}  // namespace lcs::toy
