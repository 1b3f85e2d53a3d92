// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lcs/error.hpp"
#include "lcs/subspace.hpp"

using namespace lcs;

namespace {

RowMatrix gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, scale);
    RowMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = n(rng);
    return m;
}

Eigen::MatrixXd orthonormal(Eigen::Index d, Eigen::Index k, std::uint64_t seed) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd(gaussian(d, k, seed)));
    return qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
}

// Cyclic Jacobi rotations on a symmetric matrix; returns eigenvalues
// (descending) and eigenvectors as columns.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> jacobi_eigen(Eigen::MatrixXd a) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                off += a(p, q) * a(p, q);
        if (off < 1e-30)
            break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) > a(y, y); });
    Eigen::VectorXd vals(n);
    Eigen::MatrixXd vecs(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        vals(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
        vecs.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return {vals, vecs};
}

Eigen::MatrixXd naive_covariance(const RowMatrix& x) {
    const Eigen::Index n = x.rows(), d = x.cols();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            mean(j) += x(i, j) / static_cast<double>(n);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index p = 0; p < d; ++p)
            for (Eigen::Index q = 0; q < d; ++q)
                cov(p, q) += (x(i, p) - mean(p)) * (x(i, q) - mean(q)) / static_cast<double>(n);
    return cov;
}

// Anisotropic samples, so the top-3 eigenvalues are well separated.
RowMatrix anisotropic(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
    RowMatrix x = gaussian(n, d, seed);
    for (Eigen::Index j = 0; j < d; ++j)
        x.col(j) *= 1.0 / (1.0 + static_cast<double>(j));
    const Eigen::MatrixXd rot = orthonormal(d, d, seed + 1000);
    return x * rot.transpose();
}

}  // namespace

TEST(LatentTensor, Invariants) {
    EXPECT_THROW(LatentTensor(RowMatrix(0, 4)), Error);
    EXPECT_THROW(LatentTensor(RowMatrix::Zero(2, 2)), Error);
    RowMatrix bad = RowMatrix::Zero(2, 4);
    bad(1, 2) = std::nan("");
    EXPECT_THROW(LatentTensor{bad}, Error);
    EXPECT_NO_THROW(LatentTensor(RowMatrix::Zero(1, 3)));
}

TEST(AveragePatches, Examples) {
    const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(5, -1.0, 3.0);
    RowMatrix equal(3, 5);
    equal.rowwise() = v.transpose();
    EXPECT_TRUE(average_patches(LatentTensor(equal)).isApprox(v));

    RowMatrix pair(2, 5);
    pair.row(0).setZero();
    pair.row(1) = 2.0 * v.transpose();
    EXPECT_TRUE(average_patches(LatentTensor(pair)).isApprox(v, 1e-15));

    const RowMatrix big = gaussian(512, 7, 3);
    const Eigen::VectorXd got = average_patches(LatentTensor(big));
    for (Eigen::Index j = 0; j < 7; ++j) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < 512; ++i)
            sum += big(i, j);
        EXPECT_NEAR(got(j), sum / 512.0, 1e-12);
    }
}

TEST(SubspaceModel, Validation) {
    const Eigen::MatrixXd q = orthonormal(6, 3, 4);
    EXPECT_NO_THROW(SubspaceModel(Eigen::VectorXd::Zero(6), q, {0.5, 0.3, 0.2}));
    EXPECT_THROW(SubspaceModel(Eigen::VectorXd::Zero(6), 2.0 * q, {0.5, 0.3, 0.2}), Error);
    EXPECT_THROW(SubspaceModel(Eigen::VectorXd::Zero(6), q, {0.2, 0.3, 0.1}), Error);
    EXPECT_THROW(SubspaceModel(Eigen::VectorXd::Zero(6), q, {0.6, 0.3, 0.2}), Error);
    EXPECT_THROW(SubspaceModel(Eigen::VectorXd::Zero(5), q, {0.5, 0.3, 0.2}), Error);
}

TEST(FitPca, LineSamples) {
    const Eigen::VectorXd dir = Eigen::VectorXd::LinSpaced(8, 1.0, 2.0).normalized();
    RowMatrix x(10, 8);
    for (Eigen::Index i = 0; i < 10; ++i)
        x.row(i) = (0.3 * static_cast<double>(i) - 1.0) * dir.transpose();
    const PcaResult r = fit_pca(x);
    EXPECT_NEAR(r.model.explained()[0], 1.0, 1e-12);
    EXPECT_NEAR(r.model.explained()[1], 0.0, 1e-12);
    EXPECT_NEAR(r.model.explained()[2], 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.model.basis().col(0).dot(dir)), 1.0, 1e-12);
}

TEST(FitPca, Errors) {
    EXPECT_THROW(fit_pca(gaussian(3, 6, 5)), Error);
    RowMatrix constant(6, 5);
    constant.rowwise() = Eigen::RowVectorXd::Constant(5, 2.5);
    try {
        fit_pca(constant);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("degenerate input"), std::string::npos);
    }
}

TEST(FitPca, MatchesJacobiOracle) {
    for (std::uint64_t seed = 10; seed < 20; ++seed) {
        const Eigen::Index d = 3 + static_cast<Eigen::Index>(seed % 14);
        const Eigen::Index n = 4 + static_cast<Eigen::Index>((seed * 7) % 40);
        const RowMatrix x = anisotropic(n, d, seed);
        const PcaResult r = fit_pca(x);
        const auto [vals, vecs] = jacobi_eigen(naive_covariance(x));

        const double trace = vals.sum();
        EXPECT_NEAR(r.total_variance, trace, 1e-9);
        for (Eigen::Index k = 0; k < d; ++k)
            EXPECT_NEAR(r.eigenvalues(k), std::max(vals(k), 0.0), 1e-9) << "d=" << d << " n=" << n;
        for (int k = 0; k < 3; ++k)
            EXPECT_NEAR(r.model.explained()[static_cast<std::size_t>(k)], vals(k) / trace, 1e-9);

        const Eigen::MatrixXd top = vecs.leftCols(3);
        if (d > 3 && vals(2) - vals(3) > 1e-6 * trace) {
            EXPECT_LT(max_principal_angle(r.model.basis(), top), 1e-6);
        }
        EXPECT_TRUE((r.model.basis().transpose() * r.model.basis()).isApprox(Eigen::Matrix3d::Identity(), 1e-9));

        // Reconstruction error of the training set equals the discarded variance.
        double resid = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::VectorXd c = x.row(i).transpose() - r.model.mean();
            resid += (c - r.model.basis() * (r.model.basis().transpose() * c)).squaredNorm();
        }
        EXPECT_NEAR(resid / static_cast<double>(n), trace - vals.head(3).sum(), 1e-6);
    }
}

TEST(FitPca, GramPathWhenFewSamples) {
    const RowMatrix x = anisotropic(6, 20, 31);
    const PcaResult r = fit_pca(x);
    const auto [vals, vecs] = jacobi_eigen(naive_covariance(x));
    EXPECT_LT(max_principal_angle(r.model.basis(), vecs.leftCols(3)), 1e-6);
    for (int k = 0; k < 3; ++k)
        EXPECT_NEAR(r.eigenvalues(k), vals(k), 1e-9);
    EXPECT_EQ(r.eigenvalues.size(), 20);
}

TEST(FitPca, PermutationInvariant) {
    RowMatrix x = anisotropic(40, 9, 41);
    const PcaResult a = fit_pca(x);
    std::vector<Eigen::Index> perm(40);
    for (Eigen::Index i = 0; i < 40; ++i)
        perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(42));
    RowMatrix y(40, 9);
    for (Eigen::Index i = 0; i < 40; ++i)
        y.row(i) = x.row(perm[static_cast<std::size_t>(i)]);
    EXPECT_LT(max_principal_angle(a.model.basis(), fit_pca(y).model.basis()), 1e-8);
}

TEST(FitPca, RecoversEmbeddedIsotropicSpread) {
    const Eigen::MatrixXd frame = orthonormal(12, 3, 51);
    const RowMatrix g = gaussian(200, 3, 52);
    const Eigen::VectorXd offset = Eigen::VectorXd::LinSpaced(12, -3.0, 3.0);
    RowMatrix x = g * frame.transpose();
    x.rowwise() += offset.transpose();
    const PcaResult r = fit_pca(x);
    EXPECT_LT(max_principal_angle(r.model.basis(), frame), 1e-6);
    EXPECT_GE(r.model.explained()[0] + r.model.explained()[1] + r.model.explained()[2], 1.0 - 1e-12);
}

TEST(FitPca, OrientationProbes) {
    const Eigen::MatrixXd frame = orthonormal(10, 3, 61);
    RowMatrix g = gaussian(300, 3, 62);
    g.col(0) *= 3.0;
    g.col(1) *= 2.0;
    const RowMatrix x = g * frame.transpose();
    OrientationProbes probes{frame * Eigen::Vector3d(5, 0, 0), frame * Eigen::Vector3d(-5, 0, 0),
                             frame * Eigen::Vector3d(0, 2, 0), frame * Eigen::Vector3d(0, 1, 1.7)};
    // Flip the inputs; orientation must come from the probes, not the data.
    for (double sign : {1.0, -1.0}) {
        if (sign < 0)
            probes = {frame * Eigen::Vector3d(-5, 0, 0), frame * Eigen::Vector3d(5, 0, 0),
                      frame * Eigen::Vector3d(0, -2, 0), frame * Eigen::Vector3d(0, -1, -1.7)};
        const PcaResult r = fit_pca(x, probes);
        const SubspaceModel& m = r.model;
        EXPECT_GT(project(probes.white, m)(0), project(probes.black, m)(0));
        EXPECT_GT(project(probes.red, m)(1), 0.0);
        const Vec3 red = project(probes.red, m) - project(0.5 * (probes.white + probes.black), m);
        const Vec3 yellow = project(probes.yellow, m) - project(0.5 * (probes.white + probes.black), m);
        EXPECT_GT(red(1) * yellow(2) - red(2) * yellow(1), 0.0);
    }
}

TEST(ProjectInject, Examples) {
    const Eigen::MatrixXd q = orthonormal(7, 3, 71);
    const Eigen::VectorXd mu = Eigen::VectorXd::LinSpaced(7, 0.0, 1.0);
    const SubspaceModel m(mu, q, {0.5, 0.3, 0.2});

    EXPECT_TRUE(project(mu, m).isZero(1e-15));
    EXPECT_TRUE(project(Eigen::VectorXd(mu + q.col(0)), m).isApprox(Vec3(1, 0, 0), 1e-12));
    EXPECT_THROW(project(Eigen::VectorXd::Zero(6), m), Error);

    const LatentTensor z(gaussian(9, 7, 72));
    const LcsCoords c = project(z, m);
    for (Eigen::Index i = 0; i < 9; ++i)
        for (int k = 0; k < 3; ++k) {
            double dot = 0.0;
            for (Eigen::Index j = 0; j < 7; ++j)
                dot += q(j, k) * (z.data()(i, j) - mu(j));
            EXPECT_NEAR(c(i, k), dot, 1e-12);
        }

    EXPECT_TRUE(inject(z, c, m).data().isApprox(z.data(), 1e-14));

    LcsCoords target(9, 3);
    target.setRandom();
    const LatentTensor z2 = inject(z, target, m);
    EXPECT_TRUE(project(z2, m).isApprox(target, 1e-12));
    const Eigen::MatrixXd comp = Eigen::MatrixXd::Identity(7, 7) - q * q.transpose();
    for (Eigen::Index i = 0; i < 9; ++i) {
        const Eigen::VectorXd before = comp * (z.row(i).transpose() - mu);
        const Eigen::VectorXd after = comp * (z2.row(i).transpose() - mu);
        EXPECT_LT((before - after).cwiseAbs().maxCoeff(), 1e-9);
    }
    EXPECT_THROW(inject(z, LcsCoords(8, 3), m), Error);
}

TEST(PrincipalAngle, KnownCases) {
    const Eigen::MatrixXd q = orthonormal(6, 6, 81);
    EXPECT_LT(max_principal_angle(q.leftCols(3), q.leftCols(3)), 1e-12);
    EXPECT_NEAR(max_principal_angle(q.leftCols(3), q.rightCols(3)), std::numbers::pi / 2.0, 1e-9);
    Eigen::MatrixXd tilted = q.leftCols(3);
    tilted.col(2) = std::cos(0.1) * q.col(2) + std::sin(0.1) * q.col(4);
    EXPECT_NEAR(max_principal_angle(q.leftCols(3), tilted), 0.1, 1e-12);
}
