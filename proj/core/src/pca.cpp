// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpdkit/pca.hpp"

#include <cmath>

namespace dpdkit::pca {

PcaProjector fit_pca(const std::vector<RawWindow>& windows, int d) {
    if (d < 1) throw InputError("fit_pca: d must be >= 1");
    const Eigen::Index n = static_cast<Eigen::Index>(windows.size());
    if (n < d)
        throw InputError("fit_pca: need at least d=" + std::to_string(d) + " windows, got " +
                         std::to_string(n));
    const Eigen::Index p = static_cast<Eigen::Index>(windows[0].values.size());
    if (d > p) throw InputError("fit_pca: d exceeds input dimension");

    Eigen::MatrixXd X(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(windows[i].values.size()) != p)
            throw InputError("fit_pca: windows have inconsistent lengths");
        X.row(i) = Eigen::Map<const Eigen::VectorXd>(windows[i].values.data(), p);
    }

    PcaProjector proj;
    proj.mean = X.colwise().mean();
    X.rowwise() -= proj.mean.transpose();

    Eigen::MatrixXd cov = (X.transpose() * X) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) throw InternalError("fit_pca: eigendecomposition failed");

    // Eigen returns eigenvalues ascending; take the top d in descending order.
    const Eigen::VectorXd& evals = eig.eigenvalues();
    const Eigen::MatrixXd& evecs = eig.eigenvectors();
    double scale = std::max(std::abs(evals(p - 1)), 1.0);
    int degenerate = 0;
    for (int j = 0; j < d; ++j)
        if (evals(p - 1 - j) <= scale * 1e-12) ++degenerate;
    if (degenerate > 0)
        throw InputError("fit_pca: " + std::to_string(degenerate) +
                         " of the requested " + std::to_string(d) +
                         " directions have zero variance");

    proj.components.resize(d, p);
    proj.explained_variance.resize(d);
    for (int j = 0; j < d; ++j) {
        Eigen::VectorXd v = evecs.col(p - 1 - j);
        // Sign convention: largest-magnitude entry nonnegative, first on ties.
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < p; ++i)
            if (std::abs(v(i)) > std::abs(v(best))) best = i;
        if (v(best) < 0.0) v = -v;
        proj.components.row(j) = v.transpose();
        proj.explained_variance(j) = evals(p - 1 - j);
    }
    return proj;
}

InstanceVector project(const PcaProjector& projector, const RawWindow& window) {
    if (static_cast<Eigen::Index>(window.values.size()) != projector.input_dim())
        throw InputError("project: window length " + std::to_string(window.values.size()) +
                         " does not match projector input dimension " +
                         std::to_string(projector.input_dim()));
    Eigen::Map<const Eigen::VectorXd> v(window.values.data(), projector.input_dim());
    Eigen::VectorXd f = projector.components * (v - projector.mean);
    InstanceVector out;
    out.trial_id = window.trial_id;
    out.window_index = window.window_index;
    out.features.assign(f.data(), f.data() + f.size());
    return out;
}

std::vector<InstanceVector> project_all(const PcaProjector& projector,
                                        const std::vector<RawWindow>& windows) {
    std::vector<InstanceVector> out;
    out.reserve(windows.size());
    for (const auto& w : windows) out.push_back(project(projector, w));
    return out;
}

}  // namespace dpdkit::pca
