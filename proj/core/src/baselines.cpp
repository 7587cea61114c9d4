// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpdkit/baselines.hpp"

#include <Eigen/Dense>
#include <random>

#include "dpdkit/rng.hpp"

namespace dpdkit::baselines {

MajorityVoteResult knn_majority_trial(const std::vector<InstanceVector>& instances,
                                      const rules::Bag& bag_pos, const rules::Bag& bag_neg, int k) {
    if (instances.empty()) throw InputError("knn_majority_trial: no instances");
    if (bag_pos.size() == 0 || bag_neg.size() == 0) throw InputError("knn_majority_trial: empty bag");
    if (k < 1) throw InputError("knn_majority_trial: k must be >= 1");

    // Union bag: positives first, then negatives. Tie rule inherits knn's
    // ascending-insertion-index order over this layout.
    knn::PointMatrix all;
    all.n = bag_pos.points.n + bag_neg.points.n;
    all.d = bag_pos.points.d;
    all.data.reserve(all.n * all.d);
    all.data.insert(all.data.end(), bag_pos.points.data.begin(), bag_pos.points.data.end());
    all.data.insert(all.data.end(), bag_neg.points.data.begin(), bag_neg.points.data.end());

    MajorityVoteResult result;
    result.window_labels.reserve(instances.size());
    std::size_t am_windows = 0;
    for (const auto& inst : instances) {
        knn::NeighborSet ns = knn::knn(inst.features, all, static_cast<std::size_t>(k));
        std::size_t am_votes = 0;
        for (std::size_t idx : ns.indices)
            if (idx < bag_pos.points.n) ++am_votes;
        bool is_am = 2 * am_votes >= ns.indices.size();  // tie -> AM
        result.window_labels.push_back(is_am ? Label::AM : Label::TD);
        if (is_am) ++am_windows;
    }
    result.am_window_fraction = static_cast<double>(am_windows) / static_cast<double>(instances.size());
    result.prediction = 2 * am_windows >= instances.size() ? Label::AM : Label::TD;  // tie -> AM
    return result;
}

namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Matrix to_eigen(const knn::PointMatrix& m) {
    return Eigen::Map<const Matrix>(m.data.data(), static_cast<Eigen::Index>(m.n),
                                    static_cast<Eigen::Index>(m.d));
}

}  // namespace

Codebook kmeans(const knn::PointMatrix& instances, std::size_t clusters, std::uint64_t seed,
                rules::Polarity source_polarity, std::size_t max_iters) {
    const std::size_t n = instances.n;
    if (clusters == 0) throw InputError("kmeans: clusters must be >= 1");
    if (clusters > n)
        throw InputError("kmeans: clusters (" + std::to_string(clusters) + ") exceed instances (" +
                         std::to_string(n) + ")");
    const Eigen::Index d = static_cast<Eigen::Index>(instances.d);
    const Eigen::Index C = static_cast<Eigen::Index>(clusters);

    Matrix X = to_eigen(instances);
    Eigen::VectorXd x_sq = X.rowwise().squaredNorm();

    Rng rng(seed);

    // k-means++ seeding.
    Matrix centroids(C, d);
    Eigen::VectorXd best_sq = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                                        std::numeric_limits<double>::infinity());
    std::uniform_int_distribution<std::size_t> uni(0, n - 1);
    std::size_t first = uni(rng);
    centroids.row(0) = X.row(static_cast<Eigen::Index>(first));
    for (Eigen::Index c = 1; c < C; ++c) {
        best_sq = best_sq.cwiseMin(
            (x_sq.array() + centroids.row(c - 1).squaredNorm() -
             2.0 * (X * centroids.row(c - 1).transpose()).array())
                .max(0.0)
                .matrix());
        double total = best_sq.sum();
        std::size_t pick;
        if (total <= 0.0) {
            pick = uni(rng);
        } else {
            std::uniform_real_distribution<double> ud(0.0, total);
            double target = ud(rng);
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += best_sq(static_cast<Eigen::Index>(i));
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        }
        centroids.row(c) = X.row(static_cast<Eigen::Index>(pick));
    }

    std::vector<Eigen::Index> assign(n, -1);
    Eigen::VectorXd point_sq_dist(static_cast<Eigen::Index>(n));
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        // Assignment step via ||x||^2 + ||c||^2 - 2 x.c.
        Eigen::VectorXd c_sq = centroids.rowwise().squaredNorm();
        Matrix dots = X * centroids.transpose();  // n x C
        bool changed = false;
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
            Eigen::Index best = 0;
            double best_d = x_sq(i) + c_sq(0) - 2.0 * dots(i, 0);
            for (Eigen::Index c = 1; c < C; ++c) {
                double dist = x_sq(i) + c_sq(c) - 2.0 * dots(i, c);
                if (dist < best_d) {
                    best_d = dist;
                    best = c;
                }
            }
            point_sq_dist(i) = std::max(best_d, 0.0);
            if (assign[static_cast<std::size_t>(i)] != best) {
                assign[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        if (!changed) break;

        // Update step.
        Matrix sums = Matrix::Zero(C, d);
        std::vector<std::size_t> counts(clusters, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums.row(assign[i]) += X.row(static_cast<Eigen::Index>(i));
            ++counts[static_cast<std::size_t>(assign[i])];
        }
        for (Eigen::Index c = 0; c < C; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) {
                // Reseed to the farthest point (lowest index on ties).
                Eigen::Index far = 0;
                for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(n); ++i)
                    if (point_sq_dist(i) > point_sq_dist(far)) far = i;
                centroids.row(c) = X.row(far);
                point_sq_dist(far) = 0.0;
            } else {
                centroids.row(c) =
                    sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
            }
        }
    }

    Codebook cb;
    cb.source_polarity = source_polarity;
    cb.centroids.n = clusters;
    cb.centroids.d = instances.d;
    cb.centroids.data.assign(centroids.data(), centroids.data() + centroids.size());
    cb.inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        cb.inertia += knn::squared_distance(instances.row(i),
                                            cb.centroids.row(static_cast<std::size_t>(assign[i])));
    return cb;
}

rules::IncrementTrace gmi_gen_trial(const std::vector<InstanceVector>& instances,
                                    const Codebook& codebook_pos, const Codebook& codebook_neg,
                                    const rules::DpdHyperParams& params) {
    rules::Bag pos, neg;
    pos.polarity = rules::Polarity::Positive;
    pos.points = codebook_pos.centroids;
    neg.polarity = rules::Polarity::Negative;
    neg.points = codebook_neg.centroids;
    return rules::classify_trial(instances, pos, neg, params);
}

rules::IncrementTrace no_dpd_trial(const std::vector<InstanceVector>& instances,
                                   const rules::Bag& bag_pos, const rules::Bag& bag_neg,
                                   rules::DpdHyperParams params) {
    params.pi = 0.0;
    return rules::classify_trial(instances, bag_pos, bag_neg, params);
}

}  // namespace dpdkit::baselines
