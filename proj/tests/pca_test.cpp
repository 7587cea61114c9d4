// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "dpdkit/pca.hpp"

using namespace dpdkit;

namespace {

RawWindow window_of(std::vector<double> values, std::size_t index = 0) {
    RawWindow w;
    w.trial_id = "t";
    w.window_index = index;
    w.values = std::move(values);
    return w;
}

/// n windows sampled from a 2-D subspace of R^5 plus an offset.
std::vector<RawWindow> planar_windows(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> a(0.0, 3.0), b(0.0, 1.0);
    std::vector<double> u = {1, 0, 1, 0, 1}, v = {0, 1, 0, -1, 0};
    std::vector<double> offset = {5, -2, 0, 1, 3};
    std::vector<RawWindow> windows;
    for (std::size_t i = 0; i < n; ++i) {
        double ca = a(rng), cb = b(rng);
        std::vector<double> x(5);
        for (int j = 0; j < 5; ++j) x[j] = offset[j] + ca * u[j] + cb * v[j];
        windows.push_back(window_of(std::move(x), i));
    }
    return windows;
}

}  // namespace

TEST_CASE("fit_pca: components are orthonormal and variances non-increasing") {
    auto windows = planar_windows(200, 42);
    auto p = pca::fit_pca(windows, 2);
    Eigen::MatrixXd gram = p.components * p.components.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(p.explained_variance(0) >= p.explained_variance(1));
}

TEST_CASE("fit_pca recovers an exact 2-D subspace of R^5") {
    auto windows = planar_windows(500, 1);
    auto p = pca::fit_pca(windows, 2);
    // Every centred sample must be reproduced exactly by its projection.
    for (std::size_t i = 0; i < windows.size(); i += 25) {
        Eigen::Map<const Eigen::VectorXd> x(windows[i].values.data(), 5);
        Eigen::VectorXd centred = x - p.mean;
        Eigen::VectorXd recon = p.components.transpose() * (p.components * centred);
        CHECK((recon - centred).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("project maps the mean to the zero vector") {
    auto windows = planar_windows(100, 7);
    auto p = pca::fit_pca(windows, 2);
    RawWindow mean_window = window_of({p.mean(0), p.mean(1), p.mean(2), p.mean(3), p.mean(4)});
    auto inst = pca::project(p, mean_window);
    for (double f : inst.features) CHECK(std::abs(f) < 1e-10);
}

TEST_CASE("fit_pca on axis-aligned data finds the dominant axis with positive sign") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> big(0.0, 10.0), small(0.0, 0.1);
    std::vector<RawWindow> windows;
    for (int i = 0; i < 300; ++i)
        windows.push_back(window_of({big(rng), small(rng), small(rng)}, i));
    auto p = pca::fit_pca(windows, 1);
    CHECK(std::abs(p.components(0, 0)) > 0.999);
    CHECK(p.components(0, 0) > 0.0);  // sign convention: largest entry nonnegative
}

TEST_CASE("explained variance matches the total variance of the retained subspace") {
    auto windows = planar_windows(400, 9);
    auto p2 = pca::fit_pca(windows, 2);
    // Plane data: the two retained directions hold all the variance.
    double retained = p2.explained_variance.sum();
    double total = 0.0;
    Eigen::VectorXd mean = p2.mean;
    for (const auto& w : windows) {
        Eigen::Map<const Eigen::VectorXd> x(w.values.data(), 5);
        total += (x - mean).squaredNorm();
    }
    total /= static_cast<double>(windows.size());
    CHECK(retained == doctest::Approx(total).epsilon(1e-6));
}

TEST_CASE("fit_pca rejects d exceeding the variance-carrying directions") {
    // Plane data has exactly 2 nonzero eigenvalues; asking for 4 must fail.
    auto windows = planar_windows(300, 5);
    CHECK_THROWS_AS(pca::fit_pca(windows, 5), InputError);
    CHECK_THROWS_AS(pca::fit_pca(windows, 0), InputError);
    std::vector<RawWindow> few(windows.begin(), windows.begin() + 1);
    CHECK_THROWS_AS(pca::fit_pca(few, 2), InputError);
}

TEST_CASE("projection is idempotent under refit on projected data's span") {
    // Project twice through the same projector: second application of the
    // reconstruction map changes nothing.
    auto windows = planar_windows(150, 13);
    auto p = pca::fit_pca(windows, 2);
    Eigen::Map<const Eigen::VectorXd> x(windows[0].values.data(), 5);
    Eigen::VectorXd once = p.components * (x - p.mean);
    Eigen::VectorXd back = p.components.transpose() * once + p.mean;
    RawWindow w2 = window_of({back(0), back(1), back(2), back(3), back(4)});
    auto inst = pca::project(p, w2);
    for (int j = 0; j < 2; ++j) CHECK(inst.features[j] == doctest::Approx(once(j)).epsilon(1e-10));
}

TEST_CASE("fit_pca is deterministic") {
    auto windows = planar_windows(100, 21);
    auto a = pca::fit_pca(windows, 2);
    auto b = pca::fit_pca(windows, 2);
    CHECK((a.components - b.components).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.mean - b.mean).cwiseAbs().maxCoeff() == 0.0);
}
