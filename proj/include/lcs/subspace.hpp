// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>

#include <Eigen/Dense>

namespace lcs {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Basis3 = Eigen::Matrix<double, Eigen::Dynamic, 3>;
using Vec3 = Eigen::Vector3d;

/// Per-patch coordinates in the latent color subspace, one row per patch.
using LcsCoords = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

/// L x d matrix of patch latents at one timestep.
class LatentTensor {
public:
    /// Throws lcs::Error unless L >= 1, d >= 3 and every entry is finite.
    explicit LatentTensor(RowMatrix data);

    Eigen::Index patches() const { return data_.rows(); }
    Eigen::Index dim() const { return data_.cols(); }
    const RowMatrix& data() const { return data_; }
    auto row(Eigen::Index i) const { return data_.row(i); }

private:
    RowMatrix data_;
};

/// Arithmetic mean over patches.
Eigen::VectorXd average_patches(const LatentTensor& z);

/// Mean, column-orthonormal d x 3 basis and explained-variance ratios of
/// the color subspace. Immutable once built.
class SubspaceModel {
public:
    /// Throws lcs::Error if shapes disagree, the basis is not orthonormal
    /// within 1e-9, or the explained ratios are not a non-increasing
    /// sequence in [0,1] summing to at most 1.
    SubspaceModel(Eigen::VectorXd mean, Basis3 basis, std::array<double, 3> explained);

    Eigen::Index dim() const { return mean_.size(); }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Basis3& basis() const { return basis_; }
    const std::array<double, 3>& explained() const { return explained_; }

private:
    Eigen::VectorXd mean_;
    Basis3 basis_;
    std::array<double, 3> explained_;
};

/// Latents of the probes used to fix the sign and in-plane rotation of the
/// principal components.
struct OrientationProbes {
    Eigen::VectorXd white;
    Eigen::VectorXd black;
    Eigen::VectorXd red;
    Eigen::VectorXd yellow;
};

struct PcaResult {
    SubspaceModel model;
    /// All covariance eigenvalues, descending, negatives from rounding
    /// clamped to zero.
    Eigen::VectorXd eigenvalues;
    /// Trace of the (population) covariance.
    double total_variance = 0.0;
};

/// Fits the 3-D subspace to N x d samples (one d-vector per row).
///
/// The covariance uses 1/N normalization. When N < d the decomposition runs
/// on the N x N Gram matrix instead of the d x d covariance.
///
/// Orientation: with probes, PC1 points from black to white, PC2 is rotated
/// or flipped so the red probe has a positive coordinate (rotated within the
/// PC2/PC3 plane when those eigenvalues tie), and PC3 is flipped so yellow
/// lies at a positive angle from red. Without probes, each column's
/// largest-magnitude entry is made positive.
///
/// Throws lcs::Error for fewer than 4 samples, d < 3, or zero total
/// variance ("degenerate input").
PcaResult fit_pca(const RowMatrix& samples, const std::optional<OrientationProbes>& orientation = std::nullopt);

Vec3 project(const Eigen::VectorXd& z, const SubspaceModel& m);

/// Per-patch coordinates B^T (z_i - mu).
LcsCoords project(const LatentTensor& z, const SubspaceModel& m);

/// Replaces the subspace coordinates of one vector, keeping its component
/// orthogonal to span(B).
Eigen::VectorXd inject(const Eigen::VectorXd& z, const Vec3& coords, const SubspaceModel& m);

/// z'_i = z_i + B (c_i - B^T (z_i - mu)) for every patch.
LatentTensor inject(const LatentTensor& z, const LcsCoords& coords, const SubspaceModel& m);

/// Largest principal angle (radians) between the column spans of two
/// column-orthonormal matrices with the same row count. Computed from sines,
/// so it stays accurate for nearly identical subspaces.
double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace lcs
