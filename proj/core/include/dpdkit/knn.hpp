// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPDKIT_KNN_HPP
#define DPDKIT_KNN_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "dpdkit/types.hpp"

namespace dpdkit::knn {

/// Immutable row-major matrix of points; the storage behind bags and
/// indices.
struct PointMatrix {
    std::vector<double> data;  // n * d, row-major
    std::size_t n = 0;
    std::size_t d = 0;

    std::span<const double> row(std::size_t i) const { return {data.data() + i * d, d}; }

    static PointMatrix from_instances(const std::vector<InstanceVector>& instances);
    static PointMatrix from_rows(std::vector<std::vector<double>> rows);
};

/// Squared Euclidean distance accumulated in ascending dimension order,
/// so brute force, the spatial index, and any oracle agree bitwise.
double squared_distance(std::span<const double> a, std::span<const double> b);

/// k nearest neighbours, distances ascending. Ties broken by ascending
/// insertion index. k is clamped to the bag size.
struct NeighborSet {
    std::vector<std::size_t> indices;
    std::vector<double> sq_distances;
};

NeighborSet knn(std::span<const double> query, const PointMatrix& bag, std::size_t k);

/// Exact kd-tree over an immutable snapshot of the points. Results are
/// identical to knn() for every query, including the tie rule. Queries
/// are const and safe to run concurrently.
class KdTree {
public:
    explicit KdTree(PointMatrix points, std::size_t leaf_size = 16);

    NeighborSet query(std::span<const double> q, std::size_t k) const;

    std::size_t size() const { return points_.n; }

private:
    struct Node {
        int split_dim = -1;  // -1 for leaves
        double split_value = 0.0;
        std::size_t begin = 0, end = 0;  // range into order_ (leaves)
        int left = -1, right = -1;
    };

    int build(std::size_t begin, std::size_t end, std::size_t leaf_size);

    PointMatrix points_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace dpdkit::knn

#endif  // DPDKIT_KNN_HPP
