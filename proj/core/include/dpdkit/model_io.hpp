// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPDKIT_MODEL_IO_HPP
#define DPDKIT_MODEL_IO_HPP

#include <cstdint>
#include <string>

#include "dpdkit/pca.hpp"
#include "dpdkit/rules.hpp"

namespace dpdkit::model {

/// The lazy-learning model: PCA projector, the two instance bags, and the
/// hyper-parameters. Persisted as a directory with a plain-text manifest
/// plus raw little-endian float64 arrays, so persisted-model
/// classification is bit-identical to in-memory classification.
struct ModelArchive {
    pca::PcaProjector projector;
    rules::Bag bag_pos;
    rules::Bag bag_neg;
    rules::DpdHyperParams params;
    std::size_t window_samples = 100;
    std::uint64_t seed = 0;
};

void save_model(const std::string& dir, const ModelArchive& model);
ModelArchive load_model(const std::string& dir);

}  // namespace dpdkit::model

#endif  // DPDKIT_MODEL_IO_HPP
