// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpdkit/rules.hpp"

#include <cmath>
#include <fstream>

#include "dpdkit/csv.hpp"

namespace dpdkit::rules {

Bag Bag::from_instances(Polarity polarity, const std::vector<InstanceVector>& instances) {
    Bag bag;
    bag.polarity = polarity;
    bag.points = knn::PointMatrix::from_instances(instances);
    bag.trial_ids.reserve(instances.size());
    for (const auto& inst : instances) bag.trial_ids.push_back(inst.trial_id);
    return bag;
}

void DpdHyperParams::validate() const {
    if (k < 1) throw InputError("hyperparams: k must be >= 1");
    if (pi < 0.0) throw InputError("hyperparams: pi must be >= 0");
    if (!(gamma > 0.0)) throw InputError("hyperparams: gamma must be > 0");
}

const char* window_class_name(WindowClass c) {
    switch (c) {
        case WindowClass::wAM: return "wAM";
        case WindowClass::wTD: return "wTD";
        case WindowClass::wNM: return "wNM";
    }
    throw InternalError("window_class_name: bad enum");
}

double log_kernel_density(std::span<const double> sq_dists, double gamma) {
    if (sq_dists.empty()) throw InputError("log_kernel_density: no neighbours");
    // Largest exponent is -gamma * d_min; distances arrive ascending.
    double m = -gamma * sq_dists[0];
    double sum = 0.0;
    for (double d : sq_dists) sum += std::exp(-gamma * d - m);
    return m + std::log(sum) - std::log(static_cast<double>(sq_dists.size()));
}

double increment(std::span<const double> query, const Bag& bag_pos, const Bag& bag_neg,
                 const DpdHyperParams& params) {
    params.validate();
    if (bag_pos.size() == 0 || bag_neg.size() == 0) throw InputError("increment: empty bag");
    auto k = static_cast<std::size_t>(params.k);
    knn::NeighborSet np = knn::knn(query, bag_pos.points, k);
    knn::NeighborSet nn = knn::knn(query, bag_neg.points, k);
    return log_kernel_density(np.sq_distances, params.gamma) -
           log_kernel_density(nn.sq_distances, params.gamma);
}

WindowClass classify_window(double delta, double pi) {
    if (pi < 0.0) throw InputError("classify_window: pi must be >= 0");
    if (delta > pi) return WindowClass::wAM;
    if (delta < -pi) return WindowClass::wTD;
    return WindowClass::wNM;
}

IncrementTrace aggregate_trace(const std::string& trial_id,
                               const std::vector<std::size_t>& window_indices,
                               const std::vector<double>& deltas, const DpdHyperParams& params) {
    if (deltas.empty()) throw InputError("aggregate_trace: no windows");
    if (window_indices.size() != deltas.size())
        throw InternalError("aggregate_trace: index/delta size mismatch");

    IncrementTrace trace;
    trace.trial_id = trial_id;
    trace.windows.reserve(deltas.size());
    double weighted_sum = 0.0;
    std::size_t evidence = 0;
    // Window-order reduction keeps the score bit-deterministic.
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        WindowRecord rec;
        rec.window_index = window_indices[i];
        rec.delta = deltas[i];
        rec.cls = classify_window(deltas[i], params.pi);
        rec.mask = rec.cls == WindowClass::wNM ? 0 : 1;
        if (rec.mask) {
            weighted_sum += rec.delta;
            ++evidence;
        }
        trace.windows.push_back(rec);
    }

    if (evidence == 0) {
        trace.score = 0.0;
        trace.prediction = Label::TD;
        trace.no_evidence = true;
        return trace;
    }
    trace.score = weighted_sum / static_cast<double>(evidence);
    if (params.min_evidence > 0 && evidence < params.min_evidence) {
        trace.prediction = Label::TD;
        return trace;
    }
    trace.prediction = trace.score > params.lambda ? Label::AM : Label::TD;
    return trace;
}

IncrementTrace classify_trial(const std::vector<InstanceVector>& instances, const Bag& bag_pos,
                              const Bag& bag_neg, const DpdHyperParams& params) {
    params.validate();
    if (instances.empty()) throw InputError("classify_trial: no instances");

    std::vector<std::size_t> window_indices;
    std::vector<double> deltas;
    window_indices.reserve(instances.size());
    deltas.reserve(instances.size());
    for (const auto& inst : instances) {
        window_indices.push_back(inst.window_index);
        deltas.push_back(increment(inst.features, bag_pos, bag_neg, params));
    }
    return aggregate_trace(instances[0].trial_id, window_indices, deltas, params);
}

void write_trace_csv(const std::string& path, const IncrementTrace& trace,
                     std::size_t window_samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << "trial_id,window_index,start_sample,delta,mask,class\n";
    for (const auto& rec : trace.windows) {
        out << trace.trial_id << ',' << rec.window_index << ','
            << rec.window_index * window_samples << ',' << csv::format_double(rec.delta) << ','
            << rec.mask << ',' << window_class_name(rec.cls) << '\n';
    }
}

}  // namespace dpdkit::rules
