// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Comparison methods: KNN majority voting, GMI-GEN (k-means quantised
// bags), and No-DPD (pi forced to 0).

#ifndef DPDKIT_BASELINES_HPP
#define DPDKIT_BASELINES_HPP

#include <cstdint>
#include <vector>

#include "dpdkit/rules.hpp"

namespace dpdkit::baselines {

/// Per-window majority vote over the k nearest neighbours in the union
/// of both bags (positive instances first, then negative), then a
/// majority vote over windows. Ties at either level go to AM.
struct MajorityVoteResult {
    Label prediction = Label::TD;
    double am_window_fraction = 0.0;  // usable as a ROC score
    std::vector<Label> window_labels;
};

MajorityVoteResult knn_majority_trial(const std::vector<InstanceVector>& instances,
                                      const rules::Bag& bag_pos, const rules::Bag& bag_neg, int k);

/// k-means codebook compressing one bag.
struct Codebook {
    knn::PointMatrix centroids;
    rules::Polarity source_polarity = rules::Polarity::Positive;
    double inertia = 0.0;
};

/// Lloyd's algorithm from seeded k-means++ initialisation. Stops when
/// assignments are stable or after max_iters iterations; an emptied
/// cluster is reseeded to the point farthest from its assigned centroid.
/// Deterministic given the seed.
Codebook kmeans(const knn::PointMatrix& instances, std::size_t clusters, std::uint64_t seed,
                rules::Polarity source_polarity = rules::Polarity::Positive,
                std::size_t max_iters = 100);

/// classify_trial with each bag replaced by its codebook centroids.
rules::IncrementTrace gmi_gen_trial(const std::vector<InstanceVector>& instances,
                                    const Codebook& codebook_pos, const Codebook& codebook_neg,
                                    const rules::DpdHyperParams& params);

/// classify_trial with pi forced to 0.
rules::IncrementTrace no_dpd_trial(const std::vector<InstanceVector>& instances,
                                   const rules::Bag& bag_pos, const rules::Bag& bag_neg,
                                   rules::DpdHyperParams params);

}  // namespace dpdkit::baselines

#endif  // DPDKIT_BASELINES_HPP
