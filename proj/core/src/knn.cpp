// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpdkit/knn.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace dpdkit::knn {

PointMatrix PointMatrix::from_instances(const std::vector<InstanceVector>& instances) {
    PointMatrix m;
    if (instances.empty()) return m;
    m.n = instances.size();
    m.d = instances[0].features.size();
    m.data.reserve(m.n * m.d);
    for (const auto& inst : instances) {
        if (inst.features.size() != m.d)
            throw InputError("PointMatrix: instances have inconsistent dimensions");
        m.data.insert(m.data.end(), inst.features.begin(), inst.features.end());
    }
    return m;
}

PointMatrix PointMatrix::from_rows(std::vector<std::vector<double>> rows) {
    PointMatrix m;
    if (rows.empty()) return m;
    m.n = rows.size();
    m.d = rows[0].size();
    m.data.reserve(m.n * m.d);
    for (const auto& r : rows) {
        if (r.size() != m.d) throw InputError("PointMatrix: rows have inconsistent dimensions");
        m.data.insert(m.data.end(), r.begin(), r.end());
    }
    return m;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

namespace {

struct Cand {
    double dist;
    std::size_t index;
};

// True when a beats b under the tie rule (smaller distance, then smaller
// insertion index).
inline bool better(const Cand& a, const Cand& b) {
    return a.dist < b.dist || (a.dist == b.dist && a.index < b.index);
}

// priority_queue ordered so the worst candidate is on top.
using CandHeap = std::priority_queue<Cand, std::vector<Cand>, decltype(&better)>;

NeighborSet drain(CandHeap& heap) {
    NeighborSet out;
    out.indices.resize(heap.size());
    out.sq_distances.resize(heap.size());
    for (std::size_t i = heap.size(); i-- > 0;) {
        out.indices[i] = heap.top().index;
        out.sq_distances[i] = heap.top().dist;
        heap.pop();
    }
    return out;
}

}  // namespace

NeighborSet knn(std::span<const double> query, const PointMatrix& bag, std::size_t k) {
    if (bag.n == 0) throw InputError("knn: empty bag");
    if (k == 0) throw InputError("knn: k must be >= 1");
    k = std::min(k, bag.n);
    CandHeap heap(&better);
    for (std::size_t i = 0; i < bag.n; ++i) {
        Cand c{squared_distance(query, bag.row(i)), i};
        if (heap.size() < k) {
            heap.push(c);
        } else if (better(c, heap.top())) {
            heap.pop();
            heap.push(c);
        }
    }
    return drain(heap);
}

KdTree::KdTree(PointMatrix points, std::size_t leaf_size) : points_(std::move(points)) {
    if (points_.n == 0) throw InputError("KdTree: empty bag");
    order_.resize(points_.n);
    for (std::size_t i = 0; i < points_.n; ++i) order_[i] = i;
    root_ = build(0, points_.n, std::max<std::size_t>(leaf_size, 1));
}

int KdTree::build(std::size_t begin, std::size_t end, std::size_t leaf_size) {
    Node node;
    node.begin = begin;
    node.end = end;
    if (end - begin <= leaf_size) {
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size() - 1);
    }

    // Split on the dimension with the widest spread.
    std::size_t d = points_.d;
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (std::size_t i = begin; i < end; ++i) {
        auto row = points_.row(order_[i]);
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], row[j]);
            hi[j] = std::max(hi[j], row[j]);
        }
    }
    std::size_t dim = 0;
    for (std::size_t j = 1; j < d; ++j)
        if (hi[j] - lo[j] > hi[dim] - lo[dim]) dim = j;
    if (hi[dim] == lo[dim]) {  // all points identical in every dimension
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size() - 1);
    }

    std::size_t mid = begin + (end - begin) / 2;
    auto coord_less = [&](std::size_t a, std::size_t b) {
        double ca = points_.row(a)[dim], cb = points_.row(b)[dim];
        return ca < cb || (ca == cb && a < b);
    };
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end, coord_less);
    node.split_dim = static_cast<int>(dim);
    node.split_value = points_.row(order_[mid])[dim];

    int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    int left = build(begin, mid, leaf_size);
    int right = build(mid, end, leaf_size);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

NeighborSet KdTree::query(std::span<const double> q, std::size_t k) const {
    if (k == 0) throw InputError("KdTree::query: k must be >= 1");
    k = std::min(k, points_.n);
    CandHeap heap(&better);

    // Recursive search, near child first; prune the far child only when
    // its plane distance strictly exceeds the current worst distance.
    auto visit = [&](auto&& self, int node_idx) -> void {
        const Node& node = nodes_[node_idx];
        if (node.split_dim < 0) {
            // Leaf. Candidates are totally ordered by (distance, index), so
            // the surviving top-k equals brute force regardless of visit order.
            for (std::size_t p = node.begin; p < node.end; ++p) {
                std::size_t i = order_[p];
                Cand c{squared_distance(q, points_.row(i)), i};
                if (heap.size() < k) {
                    heap.push(c);
                } else if (better(c, heap.top())) {
                    heap.pop();
                    heap.push(c);
                }
            }
            return;
        }
        double diff = q[static_cast<std::size_t>(node.split_dim)] - node.split_value;
        int near = diff < 0.0 ? node.left : node.right;
        int far = diff < 0.0 ? node.right : node.left;
        self(self, near);
        double plane_sq = diff * diff;
        if (heap.size() < k || plane_sq <= heap.top().dist) self(self, far);
    };
    visit(visit, root_);
    return drain(heap);
}

}  // namespace dpdkit::knn
