// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "lcs/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "lcs/error.hpp"

namespace lcs {

namespace {

constexpr double kOrthonormalTol = 1e-9;
constexpr double kTieTol = 1e-9;

// Extends the first `filled` orthonormal columns of `basis` to a full
// orthonormal set using the standard basis vectors as candidates.
void complete_orthonormal(Basis3& basis, int filled) {
    const Eigen::Index d = basis.rows();
    for (Eigen::Index e = 0; e < d && filled < 3; ++e) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(d, e);
        for (int j = 0; j < filled; ++j)
            v -= basis.col(j).dot(v) * basis.col(j);
        for (int j = 0; j < filled; ++j)
            v -= basis.col(j).dot(v) * basis.col(j);
        const double n = v.norm();
        if (n > 1e-6)
            basis.col(filled++) = v / n;
    }
}

void orient_by_magnitude(Basis3& basis) {
    for (int j = 0; j < 3; ++j) {
        Eigen::Index idx = 0;
        basis.col(j).cwiseAbs().maxCoeff(&idx);
        if (basis(idx, j) < 0.0)
            basis.col(j) = -basis.col(j);
    }
}

void orient_by_probes(Basis3& basis, const Eigen::VectorXd& eigenvalues, double trace,
                      const Eigen::VectorXd& mean, const OrientationProbes& probes) {
    const Eigen::Index d = mean.size();
    require(probes.white.size() == d && probes.black.size() == d && probes.red.size() == d &&
                probes.yellow.size() == d,
            "orientation probe dimension does not match samples");

    if (basis.col(0).dot(probes.white - probes.black) < 0.0)
        basis.col(0) = -basis.col(0);

    const Eigen::VectorXd red = probes.red - mean;
    const double r2 = basis.col(1).dot(red);
    const double r3 = basis.col(2).dot(red);
    const bool tied = std::abs(eigenvalues(1) - eigenvalues(2)) <= kTieTol * trace;
    if (tied) {
        // Any rotation inside a degenerate eigenspace is a valid solution;
        // pin PC2 to the red probe direction.
        const double n = std::hypot(r2, r3);
        if (n > 0.0) {
            const Eigen::VectorXd b2 = (r2 * basis.col(1) + r3 * basis.col(2)) / n;
            const Eigen::VectorXd b3 = (-r3 * basis.col(1) + r2 * basis.col(2)) / n;
            basis.col(1) = b2;
            basis.col(2) = b3;
        }
    } else if (r2 < 0.0) {
        basis.col(1) = -basis.col(1);
    }

    const Eigen::VectorXd yellow = probes.yellow - mean;
    const double red2 = basis.col(1).dot(red);
    const double red3 = basis.col(2).dot(red);
    const double yel2 = basis.col(1).dot(yellow);
    const double yel3 = basis.col(2).dot(yellow);
    if (red2 * yel3 - red3 * yel2 < 0.0)
        basis.col(2) = -basis.col(2);
}

}  // namespace

LatentTensor::LatentTensor(RowMatrix data) : data_(std::move(data)) {
    require(data_.rows() >= 1, "latent tensor needs at least one patch");
    require(data_.cols() >= 3, "latent dimensionality must be at least 3");
    require(data_.allFinite(), "latent tensor has non-finite entries");
}

Eigen::VectorXd average_patches(const LatentTensor& z) {
    // Row-order accumulation keeps the reduction order fixed.
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(z.dim());
    for (Eigen::Index i = 0; i < z.patches(); ++i)
        sum += z.row(i).transpose();
    return sum / static_cast<double>(z.patches());
}

SubspaceModel::SubspaceModel(Eigen::VectorXd mean, Basis3 basis, std::array<double, 3> explained)
    : mean_(std::move(mean)), basis_(std::move(basis)), explained_(explained) {
    require(mean_.size() >= 3, "subspace model dimension must be at least 3");
    require(basis_.rows() == mean_.size(), "basis row count must match mean dimension");
    require(mean_.allFinite() && basis_.allFinite(), "subspace model has non-finite entries");
    const Eigen::Matrix3d gram = basis_.transpose() * basis_;
    require((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= kOrthonormalTol,
            "subspace basis is not orthonormal");
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        require(explained_[i] >= 0.0 && explained_[i] <= 1.0, "explained ratio outside [0,1]");
        if (i > 0)
            require(explained_[i] <= explained_[i - 1], "explained ratios must be non-increasing");
        sum += explained_[i];
    }
    require(sum <= 1.0 + 1e-12, "explained ratios sum above 1");
}

PcaResult fit_pca(const RowMatrix& samples, const std::optional<OrientationProbes>& orientation) {
    const Eigen::Index n = samples.rows();
    const Eigen::Index d = samples.cols();
    require(d >= 3, "samples must have dimension >= 3");
    require(n >= 4, "fit_pca needs at least k+1 = 4 samples");
    require(samples.allFinite(), "samples contain non-finite entries");

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (Eigen::Index i = 0; i < n; ++i)
        mean += samples.row(i).transpose();
    mean /= static_cast<double>(n);

    const Eigen::MatrixXd centered = samples.rowwise() - mean.transpose();
    const double trace = centered.squaredNorm() / static_cast<double>(n);
    const double scale = std::max(1.0, mean.squaredNorm());
    if (!(trace > 1e-24 * scale))
        throw Error("degenerate input: samples have zero variance");

    Eigen::VectorXd eigenvalues;
    Basis3 basis(d, 3);
    if (n >= d) {
        const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
        require(solver.info() == Eigen::Success, "covariance eigendecomposition failed");
        eigenvalues = solver.eigenvalues().reverse();
        for (int j = 0; j < 3; ++j)
            basis.col(j) = solver.eigenvectors().col(d - 1 - j);
    } else {
        const Eigen::MatrixXd gram = centered * centered.transpose() / static_cast<double>(n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
        require(solver.info() == Eigen::Success, "Gram eigendecomposition failed");
        eigenvalues = Eigen::VectorXd::Zero(d);
        eigenvalues.head(n) = solver.eigenvalues().reverse();
        int filled = 0;
        for (int j = 0; j < 3 && j < n; ++j) {
            const double lambda = solver.eigenvalues()(n - 1 - j);
            if (lambda <= 1e-14 * trace)
                break;
            Eigen::VectorXd v = centered.transpose() * solver.eigenvectors().col(n - 1 - j);
            basis.col(filled++) = v / v.norm();
        }
        complete_orthonormal(basis, filled);
    }
    eigenvalues = eigenvalues.cwiseMax(0.0);

    if (orientation)
        orient_by_probes(basis, eigenvalues, trace, mean, *orientation);
    else
        orient_by_magnitude(basis);

    std::array<double, 3> explained{};
    for (int j = 0; j < 3; ++j)
        explained[j] = std::min(1.0, eigenvalues(j) / trace);
    // Rounding can leave a tied pair very slightly out of order.
    std::sort(explained.begin(), explained.end(), std::greater<>());

    return {SubspaceModel(std::move(mean), std::move(basis), explained), std::move(eigenvalues), trace};
}

Vec3 project(const Eigen::VectorXd& z, const SubspaceModel& m) {
    require(z.size() == m.dim(), "latent dimension does not match subspace model");
    return m.basis().transpose() * (z - m.mean());
}

LcsCoords project(const LatentTensor& z, const SubspaceModel& m) {
    require(z.dim() == m.dim(), "latent dimension does not match subspace model");
    LcsCoords out(z.patches(), 3);
    for (Eigen::Index i = 0; i < z.patches(); ++i)
        out.row(i) = (m.basis().transpose() * (z.row(i).transpose() - m.mean())).transpose();
    return out;
}

Eigen::VectorXd inject(const Eigen::VectorXd& z, const Vec3& coords, const SubspaceModel& m) {
    require(z.size() == m.dim(), "latent dimension does not match subspace model");
    const Vec3 current = m.basis().transpose() * (z - m.mean());
    return z + m.basis() * (coords - current);
}

LatentTensor inject(const LatentTensor& z, const LcsCoords& coords, const SubspaceModel& m) {
    require(z.dim() == m.dim(), "latent dimension does not match subspace model");
    require(coords.rows() == z.patches(), "coordinate rows must match patch count");
    RowMatrix out = z.data();
    for (Eigen::Index i = 0; i < z.patches(); ++i)
        out.row(i) = inject(Eigen::VectorXd(z.row(i).transpose()), Vec3(coords.row(i).transpose()), m).transpose();
    return LatentTensor(std::move(out));
}

double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    require(a.rows() == b.rows(), "principal angles need equal ambient dimension");
    const Eigen::MatrixXd residual = b - a * (a.transpose() * b);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
    const double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    return std::asin(std::min(1.0, s));
}

}  // namespace lcs
