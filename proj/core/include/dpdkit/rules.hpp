// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// The core weak-label classifier: kernel-density log-odds increments per
// window, the pi rule that masks neutral windows, and the lambda rule
// that thresholds the masked mean increment into a trial decision.

#ifndef DPDKIT_RULES_HPP
#define DPDKIT_RULES_HPP

#include <span>
#include <string>
#include <vector>

#include "dpdkit/knn.hpp"
#include "dpdkit/types.hpp"

namespace dpdkit::rules {

enum class Polarity { Positive, Negative };  // B+ (AM) / B- (TD)

/// All instances of all trials of one label, pooled. The lazy "model".
struct Bag {
    Polarity polarity = Polarity::Positive;
    knn::PointMatrix points;
    std::vector<std::string> trial_ids;  // source trial per instance

    std::size_t size() const { return points.n; }

    static Bag from_instances(Polarity polarity, const std::vector<InstanceVector>& instances);
};

struct DpdHyperParams {
    int k = 5;
    double pi = 0.0;        // >= 0
    double lambda = 0.0;
    double gamma = 1.0;     // Gaussian kernel scale, > 0
    std::size_t min_evidence = 0;  // 0 disables the minimum-evidence check

    void validate() const;
};

/// Window-level class: abnormal-discriminative, typical-discriminative,
/// or neutral.
enum class WindowClass { wAM, wTD, wNM };

const char* window_class_name(WindowClass c);

struct WindowRecord {
    std::size_t window_index = 0;
    double delta = 0.0;
    int mask = 0;  // 0 iff cls == wNM
    WindowClass cls = WindowClass::wNM;
};

/// Per-window increments plus the aggregate trial decision.
struct IncrementTrace {
    std::string trial_id;
    std::vector<WindowRecord> windows;
    double score = 0.0;       // sum(h*delta)/sum(h); 0 when no evidence
    Label prediction = Label::TD;
    bool no_evidence = false;  // true iff every window was masked
};

/// log[(1/k) * sum_j exp(-gamma * sq_dist_j)] evaluated by log-sum-exp;
/// finite for any finite distances. sq_dists must be nonempty and sorted
/// ascending (as NeighborSet provides).
double log_kernel_density(std::span<const double> sq_dists, double gamma);

/// Increment delta = log-density over the k nearest neighbours in the
/// positive bag minus the same over the negative bag. The class-prior
/// constant is absorbed into lambda and never computed.
double increment(std::span<const double> query, const Bag& bag_pos, const Bag& bag_neg,
                 const DpdHyperParams& params);

/// Strict pi rule: delta > pi -> wAM; delta < -pi -> wTD; otherwise wNM
/// (the boundary |delta| = pi is neutral).
WindowClass classify_window(double delta, double pi);

/// Full per-trial pass: per-window increments, masking, masked-mean
/// score, and the strict lambda rule. When every window is masked the
/// trial is predicted TD with no_evidence set.
IncrementTrace classify_trial(const std::vector<InstanceVector>& instances, const Bag& bag_pos,
                              const Bag& bag_neg, const DpdHyperParams& params);

/// Same decision logic applied to precomputed per-window increments.
/// classify_trial delegates here; grid search reuses it on cached deltas.
IncrementTrace aggregate_trace(const std::string& trial_id,
                               const std::vector<std::size_t>& window_indices,
                               const std::vector<double>& deltas, const DpdHyperParams& params);

/// Writes the trace CSV: trial_id,window_index,start_sample,delta,mask,class.
void write_trace_csv(const std::string& path, const IncrementTrace& trace,
                     std::size_t window_samples);

}  // namespace dpdkit::rules

#endif  // DPDKIT_RULES_HPP
