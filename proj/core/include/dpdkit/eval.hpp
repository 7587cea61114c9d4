// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Evaluation protocol: outer random-split cross-validation with an inner
// grid search over (k, pi, lambda, gamma), confusion-matrix metrics, and
// ROC/AUC.

#ifndef DPDKIT_EVAL_HPP
#define DPDKIT_EVAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpdkit/baselines.hpp"
#include "dpdkit/rules.hpp"
#include "dpdkit/types.hpp"

namespace dpdkit::eval {

/// Repeated random sub-sampling plan: each fold independently draws
/// test_size test trials without replacement. Deterministic given seed.
struct FoldPlan {
    struct Fold {
        std::vector<std::string> train_ids;
        std::vector<std::string> test_ids;
    };
    std::uint64_t seed = 0;
    std::vector<Fold> folds;
};

FoldPlan make_folds(const std::vector<std::string>& trial_ids, std::size_t n_folds,
                    std::size_t test_size, std::uint64_t seed);

/// Confusion counts and derived rates for one prediction set. Rates with
/// an empty denominator other than precision are reported as 0; precision
/// is absent when TP+FP = 0.
struct Metrics {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    double accuracy = 0.0;
    double sensitivity = 0.0;
    double specificity = 0.0;
    double false_positive_rate = 0.0;
    std::optional<double> precision;
};

Metrics evaluate(const std::vector<Label>& predictions, const std::vector<Label>& labels);

struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (FPR, TPR), sorted by FPR
    double auc = 0.0;
};

/// Sweeps the decision threshold over all distinct scores (prediction is
/// positive when score > threshold). Requires both classes present.
/// no-evidence trials should carry score -infinity.
RocCurve roc_sweep(const std::vector<double>& scores, const std::vector<Label>& labels);

enum class Method { Dpd, NoDpd, Knn, GmiGen };

Method parse_method(const std::string& name);
const char* method_name(Method m);

struct GridSpec {
    std::vector<int> ks = {1, 3, 5, 7, 9};
    std::vector<double> pis;  // empty: derived per fold from the train increments
    std::vector<double> lambdas = {-8,   -7.5, -7,   -6.5, -6,   -5.5, -5,   -4.5, -4,
                                   -3.5, -3,   -2.5, -2,   -1.5, -1,   -0.5, 0};
    std::vector<double> gammas = {1.0};
};

/// One trial after PCA projection, with its label.
struct ProjectedTrial {
    std::string trial_id;
    Label label = Label::TD;
    std::vector<InstanceVector> instances;
};

/// Exhaustive grid evaluation by inner cross-validated mean accuracy.
/// Ties broken by smaller k, then larger pi, then lambda closest to 0,
/// then smaller gamma.
rules::DpdHyperParams grid_search(const std::vector<ProjectedTrial>& train, const GridSpec& grid,
                                  Method method, std::size_t inner_folds,
                                  std::size_t inner_test_size, std::uint64_t seed,
                                  std::size_t gmi_clusters = 500, std::size_t min_evidence = 0);

struct ProtocolConfig {
    std::size_t n_folds = 10;
    std::size_t test_size = 12;
    std::size_t inner_folds = 10;
    std::size_t inner_test_size = 12;
    std::uint64_t seed = 0;
    int d = 100;
    std::size_t window_samples = 100;
    GridSpec grid;
    Method method = Method::Dpd;
    std::size_t gmi_clusters = 500;
    std::size_t min_evidence = 0;
    int threads = 1;
};

struct TrialPrediction {
    std::size_t fold = 0;
    std::string trial_id;
    Label label = Label::TD;
    Label prediction = Label::TD;
    double score = 0.0;  // -inf for no-evidence trials
    bool no_evidence = false;
};

struct FoldResult {
    std::size_t fold = 0;
    rules::DpdHyperParams params;
    Metrics metrics;
    std::vector<TrialPrediction> predictions;
    std::vector<rules::IncrementTrace> traces;  // score-producing methods only
};

struct CvResult {
    ProtocolConfig config;
    std::vector<FoldResult> folds;
    Metrics pooled;             // over all test predictions
    std::optional<RocCurve> roc;  // pooled; absent when only one class was tested
};

/// Runs the full protocol. Outer folds may run in parallel; the result is
/// independent of the thread count.
CvResult run_cv(const std::vector<TrialRecording>& trials, const ProtocolConfig& config);

/// Writes report.txt, metrics.csv, roc.csv and predictions.csv into dir.
void write_report(const std::string& dir, const CvResult& result);

double mean_accuracy(const CvResult& result);

}  // namespace dpdkit::eval

#endif  // DPDKIT_EVAL_HPP
