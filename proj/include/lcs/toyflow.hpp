// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcs/lcs_map.hpp"
#include "lcs/observe.hpp"

namespace lcs::toy {

// Default scales put the spread of final image means (beta_T of the palette
// runs) near the magnitudes of the builtin FLUX table, so unit-variance noise
// is as large relative to color as it is there.
struct EmbedderConfig {
    int dim = 16;
    std::uint64_t seed = 2024;
    /// Length of the black-to-white axis.
    double lightness_scale = 24.0;
    /// Radius of the fully saturated hue hexagon at l = 0.5.
    double chroma_scale = 16.0;
};

/// Exact rank-3 affine embedding of the HSL hexcone into d dimensions:
/// z = offset + lift * g(h, s, l), g = l a0 + s (1 - |2l - 1|) r(h), where
/// r(h) runs along a hexagon with vertices at the six primary and secondary
/// hues. The offset is chosen so mid-grey projects onto the origin of the
/// lift, i.e. the center of unit-Gaussian noise.
class ToyEmbedder {
public:
    /// Throws lcs::Error for dim < 4 or non-positive scales.
    explicit ToyEmbedder(const EmbedderConfig& config = {});

    int dim() const { return config_.dim; }
    const EmbedderConfig& config() const { return config_; }
    const Basis3& lift() const { return lift_; }
    const Eigen::VectorXd& offset() const { return offset_; }

    /// The ground-truth 3-vector g(y).
    Vec3 bicone(const HslColor& y) const;

private:
    EmbedderConfig config_;
    Basis3 lift_;
    Eigen::VectorXd offset_;
};

Eigen::VectorXd embed_hsl(const HslColor& y, const ToyEmbedder& e);

/// One latent row per grid cell, row-major.
LatentTensor embed_image(const ColorGrid& pixels, const ToyEmbedder& e);

/// Inverts the embedding: hue from the RGB hexcone sector formula applied
/// to the chroma vector. Degenerate cases follow decode: bicone factor below
/// 1e-6 gives s = 0, vanishing chroma gives h = 0.
HslColor toy_decode(const Eigen::VectorXd& z, const ToyEmbedder& e);
ColorGrid toy_decode_image(const LatentTensor& z, GridDims dims, const ToyEmbedder& e);

HslColor hsv_to_hsl(double hue, double saturation, double value);

/// L x d tensor of independent unit Gaussians, reproducible from the seed.
LatentTensor gaussian_latent(Eigen::Index patches, Eigen::Index dim, std::uint64_t seed);

/// (1 - t/T) z0 + (t/T) z1.
LatentTensor sample_path(const LatentTensor& z1, const LatentTensor& z0, int t, int total_steps);

/// Clean latents a generation can converge to. Attractor selection uses the
/// true lift, i.e. distances are measured inside the color subspace.
class AttractorField {
public:
    /// Throws lcs::Error if empty, shapes differ, or the lift does not match.
    AttractorField(std::vector<LatentTensor> attractors, Basis3 lift);

    std::size_t size() const { return attractors_.size(); }
    const LatentTensor& operator[](std::size_t k) const { return attractors_[k]; }

    /// Attractor minimizing sum_i |Q^T (z_i - a_i)|^2; ties go to the lowest index.
    std::size_t nearest(const LatentTensor& z) const;

private:
    std::vector<LatentTensor> attractors_;
    Basis3 lift_;
};

struct FlowOptions {
    int total_steps = 50;
    /// Added to 1 - tau in the velocity denominator. Zero gives exact
    /// arrival at the selected attractor on the last step.
    double epsilon = 0.0;
};

/// Euler integration z_{k+1} = z_k + (1/T) (A(z_k) - z_k) / (1 - k/T + eps)
/// from timestep `start` to T. A(z) is the nearest attractor. Returns the
/// frames for timesteps start..T.
std::vector<LatentTensor> integrate(const LatentTensor& z_start, int start, const AttractorField& field,
                                    const FlowOptions& options = {});

/// Full trajectory from noise: T + 1 frames.
std::vector<LatentTensor> generate(const LatentTensor& z0, const AttractorField& field,
                                   const FlowOptions& options = {});

struct ProbeSet {
    /// The eight solid anchor colors.
    std::vector<LabeledProbe> anchors;
    /// 8 x 8 x 8 HSV lattice (hue, saturation, value), one latent per row.
    RowMatrix lattice;
    std::vector<HslColor> lattice_colors;
};

ProbeSet make_probe_set(const ToyEmbedder& e);

OrientationProbes orientation_probes(const ProbeSet& probes);

struct NamedTrajectory {
    std::string name;
    HslColor color;
    std::vector<LatentTensor> frames;
};

/// One solid-color generation per timestep-palette color, all starting from
/// the same noise sample.
std::vector<NamedTrajectory> simulate_palette(const ToyEmbedder& e, GridDims dims, const FlowOptions& options,
                                              std::uint64_t seed);

}  // namespace lcs::toy
