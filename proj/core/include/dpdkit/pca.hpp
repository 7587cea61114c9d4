// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPDKIT_PCA_HPP
#define DPDKIT_PCA_HPP

#include <Eigen/Dense>
#include <vector>

#include "dpdkit/types.hpp"

namespace dpdkit::pca {

/// Linear projector fit by principal component analysis. Immutable after
/// fit; rows of `components` are orthonormal and ordered by descending
/// explained variance, with a deterministic sign convention (the
/// largest-magnitude entry of each row is nonnegative, first such entry
/// on ties).
struct PcaProjector {
    Eigen::VectorXd mean;                                               // input_dim
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> components;  // d x input_dim
    Eigen::VectorXd explained_variance;                                 // d, non-increasing

    Eigen::Index input_dim() const { return mean.size(); }
    Eigen::Index output_dim() const { return components.rows(); }
};

/// Fits PCA on the given windows (covariance normalised by N). Throws
/// InputError when there are fewer windows than d or when fewer than d
/// directions carry variance.
PcaProjector fit_pca(const std::vector<RawWindow>& windows, int d);

/// features = components * (values - mean).
InstanceVector project(const PcaProjector& projector, const RawWindow& window);

std::vector<InstanceVector> project_all(const PcaProjector& projector,
                                        const std::vector<RawWindow>& windows);

}  // namespace dpdkit::pca

#endif  // DPDKIT_PCA_HPP
