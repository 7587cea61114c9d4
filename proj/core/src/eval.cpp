// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpdkit/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "dpdkit/csv.hpp"
#include "dpdkit/ingest.hpp"
#include "dpdkit/pca.hpp"
#include "dpdkit/rng.hpp"

namespace dpdkit::eval {

FoldPlan make_folds(const std::vector<std::string>& trial_ids, std::size_t n_folds,
                    std::size_t test_size, std::uint64_t seed) {
    if (trial_ids.empty()) throw InputError("make_folds: no trials");
    if (test_size == 0) throw InputError("make_folds: test_size must be >= 1");
    if (test_size >= trial_ids.size())
        throw InputError("make_folds: test_size (" + std::to_string(test_size) +
                         ") must be smaller than the number of trials (" +
                         std::to_string(trial_ids.size()) + ")");
    {
        std::set<std::string> uniq(trial_ids.begin(), trial_ids.end());
        if (uniq.size() != trial_ids.size()) throw InputError("make_folds: duplicate trial ids");
    }

    FoldPlan plan;
    plan.seed = seed;
    plan.folds.reserve(n_folds);
    const std::size_t n = trial_ids.size();
    for (std::size_t f = 0; f < n_folds; ++f) {
        Rng rng(derive_seed(seed, f));
        // Partial Fisher-Yates draw of test_size positions.
        std::vector<std::size_t> pos(n);
        std::iota(pos.begin(), pos.end(), 0);
        for (std::size_t i = 0; i < test_size; ++i) {
            std::uniform_int_distribution<std::size_t> uni(i, n - 1);
            std::swap(pos[i], pos[uni(rng)]);
        }
        std::vector<bool> is_test(n, false);
        for (std::size_t i = 0; i < test_size; ++i) is_test[pos[i]] = true;

        FoldPlan::Fold fold;
        for (std::size_t i = 0; i < n; ++i)
            (is_test[i] ? fold.test_ids : fold.train_ids).push_back(trial_ids[i]);
        plan.folds.push_back(std::move(fold));
    }
    return plan;
}

Metrics evaluate(const std::vector<Label>& predictions, const std::vector<Label>& labels) {
    if (predictions.empty()) throw InputError("evaluate: empty input");
    if (predictions.size() != labels.size())
        throw InputError("evaluate: predictions and labels differ in length");

    Metrics m;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        bool pred_pos = predictions[i] == Label::AM;
        bool is_pos = labels[i] == Label::AM;
        if (pred_pos && is_pos) ++m.tp;
        else if (pred_pos && !is_pos) ++m.fp;
        else if (!pred_pos && is_pos) ++m.fn;
        else ++m.tn;
    }
    auto rate = [](std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    m.accuracy = rate(m.tp + m.tn, m.tp + m.fp + m.tn + m.fn);
    m.sensitivity = rate(m.tp, m.tp + m.fn);
    m.specificity = rate(m.tn, m.fp + m.tn);
    m.false_positive_rate = rate(m.fp, m.fp + m.tn);
    if (m.tp + m.fp > 0) m.precision = rate(m.tp, m.tp + m.fp);
    return m;
}

RocCurve roc_sweep(const std::vector<double>& scores, const std::vector<Label>& labels) {
    if (scores.size() != labels.size()) throw InputError("roc_sweep: size mismatch");
    std::size_t n_pos = 0, n_neg = 0;
    for (Label l : labels) (l == Label::AM ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) throw InputError("ROC undefined: labels contain a single class");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve roc;
    roc.points.emplace_back(0.0, 0.0);
    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        double s = scores[order[i]];
        // Consume the whole tie group before emitting a point.
        while (i < order.size() && scores[order[i]] == s) {
            (labels[order[i]] == Label::AM ? tp : fp)++;
            ++i;
        }
        roc.points.emplace_back(static_cast<double>(fp) / static_cast<double>(n_neg),
                                static_cast<double>(tp) / static_cast<double>(n_pos));
    }
    if (roc.points.back() != std::pair<double, double>(1.0, 1.0)) roc.points.emplace_back(1.0, 1.0);

    double auc = 0.0;
    for (std::size_t j = 1; j < roc.points.size(); ++j) {
        auto [x0, y0] = roc.points[j - 1];
        auto [x1, y1] = roc.points[j];
        auc += (x1 - x0) * (y0 + y1) / 2.0;
    }
    roc.auc = auc;
    return roc;
}

Method parse_method(const std::string& name) {
    if (name == "dpd") return Method::Dpd;
    if (name == "no-dpd") return Method::NoDpd;
    if (name == "knn") return Method::Knn;
    if (name == "gmi-gen") return Method::GmiGen;
    throw InputError("unknown method '" + name + "' (expected dpd|no-dpd|knn|gmi-gen)");
}

const char* method_name(Method m) {
    switch (m) {
        case Method::Dpd: return "dpd";
        case Method::NoDpd: return "no-dpd";
        case Method::Knn: return "knn";
        case Method::GmiGen: return "gmi-gen";
    }
    throw InternalError("method_name: bad enum");
}

namespace {

struct SplitBags {
    std::vector<InstanceVector> pos;
    std::vector<InstanceVector> neg;
};

SplitBags split_by_label(const std::vector<ProjectedTrial>& trials) {
    SplitBags out;
    for (const auto& t : trials) {
        auto& dst = t.label == Label::AM ? out.pos : out.neg;
        dst.insert(dst.end(), t.instances.begin(), t.instances.end());
    }
    return out;
}

/// Per-window squared distances to the kmax nearest neighbours in a bag,
/// for every window of every test trial.
std::vector<std::vector<double>> topk_distances(const std::vector<const ProjectedTrial*>& tests,
                                                const knn::PointMatrix& bag, std::size_t kmax) {
    std::vector<std::vector<double>> out;
    for (const auto* trial : tests)
        for (const auto& inst : trial->instances)
            out.push_back(knn::knn(inst.features, bag, kmax).sq_distances);
    return out;
}

///// Resolves the automatic pi grid: 0 plus 7 values log-spaced up to the
/// 95th percentile of |delta| over (a subsample of) the train instances.
std::vector<double> resolve_pi_grid(const SplitBags& bags, double gamma) {
    rules::Bag bag_pos = rules::Bag::from_instances(rules::Polarity::Positive, bags.pos);
    rules::Bag bag_neg = rules::Bag::from_instances(rules::Polarity::Negative, bags.neg);
    rules::DpdHyperParams probe;
    probe.k = static_cast<int>(std::min<std::size_t>({5, bag_pos.size(), bag_neg.size()}));
    probe.gamma = gamma;

    std::vector<const InstanceVector*> all;
    for (const auto& i : bags.pos) all.push_back(&i);
    for (const auto& i : bags.neg) all.push_back(&i);
    constexpr std::size_t kMaxProbe = 512;
    std::size_t stride = std::max<std::size_t>(1, all.size() / kMaxProbe);

    std::vector<double> abs_deltas;
    for (std::size_t i = 0; i < all.size(); i += stride)
        abs_deltas.push_back(std::abs(rules::increment(all[i]->features, bag_pos, bag_neg, probe)));
    std::sort(abs_deltas.begin(), abs_deltas.end());
    double p95 = abs_deltas[static_cast<std::size_t>(0.95 * static_cast<double>(abs_deltas.size() - 1))];

    std::vector<double> pis = {0.0};
    if (p95 > 0.0)
        for (int i = 6; i >= 0; --i) pis.push_back(p95 / std::pow(2.0, i));
    return pis;
}

struct GridPoint {
    rules::DpdHyperParams params;
    std::size_t correct = 0;
    std::size_t total = 0;
};

bool grid_point_preferred(const GridPoint& a, const GridPoint& b) {
    double acc_a = a.total ? static_cast<double>(a.correct) / static_cast<double>(a.total) : 0.0;
    double acc_b = b.total ? static_cast<double>(b.correct) / static_cast<double>(b.total) : 0.0;
    if (acc_a != acc_b) return acc_a > acc_b;
    if (a.params.k != b.params.k) return a.params.k < b.params.k;
    if (a.params.pi != b.params.pi) return a.params.pi > b.params.pi;
    if (std::abs(a.params.lambda) != std::abs(b.params.lambda))
        return std::abs(a.params.lambda) < std::abs(b.params.lambda);
    if (a.params.lambda != b.params.lambda) return a.params.lambda < b.params.lambda;
    return a.params.gamma < b.params.gamma;
}

}  // namespace

rules::DpdHyperParams grid_search(const std::vector<ProjectedTrial>& train, const GridSpec& grid,
                                  Method method, std::size_t inner_folds,
                                  std::size_t inner_test_size, std::uint64_t seed,
                                  std::size_t gmi_clusters, std::size_t min_evidence) {
    if (grid.ks.empty() || grid.lambdas.empty() || grid.gammas.empty())
        throw InputError("grid_search: empty grid");
    std::vector<std::string> ids;
    for (const auto& t : train) ids.push_back(t.trial_id);
    FoldPlan plan;
    try {
        plan = make_folds(ids, inner_folds, inner_test_size, seed);
    } catch (const InputError& e) {
        throw InputError(std::string("grid_search: train set too small for inner split: ") + e.what());
    }

    std::map<std::string, const ProjectedTrial*> by_id;
    for (const auto& t : train) by_id[t.trial_id] = &t;

    // Resolve the pi grid once per call (per outer fold).
    std::vector<double> pis = grid.pis;
    if (method == Method::NoDpd || method == Method::Knn) {
        pis = {0.0};
    } else if (pis.empty()) {
        pis = resolve_pi_grid(split_by_label(train), grid.gammas.front());
    }
    std::vector<double> lambdas = method == Method::Knn ? std::vector<double>{0.0} : grid.lambdas;
    std::vector<double> gammas = method == Method::Knn ? std::vector<double>{1.0} : grid.gammas;

    std::vector<GridPoint> points;
    for (int k : grid.ks)
        for (double gamma : gammas)
            for (double pi : pis)
                for (double lambda : lambdas) {
                    GridPoint gp;
                    gp.params.k = k;
                    gp.params.pi = pi;
                    gp.params.lambda = lambda;
                    gp.params.gamma = gamma;
                    gp.params.min_evidence = min_evidence;
                    points.push_back(gp);
                }

    const std::size_t kmax = static_cast<std::size_t>(*std::max_element(grid.ks.begin(), grid.ks.end()));

    for (std::size_t f = 0; f < plan.folds.size(); ++f) {
        const auto& fold = plan.folds[f];
        std::vector<ProjectedTrial> inner_train;
        std::vector<const ProjectedTrial*> inner_test;
        for (const auto& id : fold.train_ids) inner_train.push_back(*by_id.at(id));
        for (const auto& id : fold.test_ids) inner_test.push_back(by_id.at(id));

        SplitBags bags = split_by_label(inner_train);
        if (bags.pos.empty() || bags.neg.empty())
            throw InputError("grid_search: inner training split contains a single class");

        knn::PointMatrix pos_points = knn::PointMatrix::from_instances(bags.pos);
        knn::PointMatrix neg_points = knn::PointMatrix::from_instances(bags.neg);

        if (method == Method::Knn) {
            // Union bag, positives first; vote by neighbour polarity.
            knn::PointMatrix all;
            all.n = pos_points.n + neg_points.n;
            all.d = pos_points.d;
            all.data = pos_points.data;
            all.data.insert(all.data.end(), neg_points.data.begin(), neg_points.data.end());

            std::vector<std::vector<std::size_t>> neighbor_idx;
            for (const auto* trial : inner_test)
                for (const auto& inst : trial->instances)
                    neighbor_idx.push_back(knn::knn(inst.features, all, kmax).indices);

            for (auto& gp : points) {
                std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(gp.params.k), all.n);
                std::size_t w = 0;
                for (const auto* trial : inner_test) {
                    std::size_t am_windows = 0;
                    for (std::size_t j = 0; j < trial->instances.size(); ++j, ++w) {
                        std::size_t am_votes = 0;
                        for (std::size_t v = 0; v < k; ++v)
                            if (neighbor_idx[w][v] < pos_points.n) ++am_votes;
                        if (2 * am_votes >= k) ++am_windows;
                    }
                    Label pred = 2 * am_windows >= trial->instances.size() ? Label::AM : Label::TD;
                    if (pred == trial->label) ++gp.correct;
                    ++gp.total;
                }
            }
            continue;
        }

        if (method == Method::GmiGen) {
            std::size_t c_pos = std::min(gmi_clusters, pos_points.n);
            std::size_t c_neg = std::min(gmi_clusters, neg_points.n);
            pos_points = baselines::kmeans(pos_points, c_pos, derive_seed(seed, 2 * f),
                                           rules::Polarity::Positive)
                             .centroids;
            neg_points = baselines::kmeans(neg_points, c_neg, derive_seed(seed, 2 * f + 1),
                                           rules::Polarity::Negative)
                             .centroids;
        }

        std::size_t kmax_pos = std::min(kmax, pos_points.n);
        std::size_t kmax_neg = std::min(kmax, neg_points.n);
        auto dists_pos = topk_distances(inner_test, pos_points, kmax_pos);
        auto dists_neg = topk_distances(inner_test, neg_points, kmax_neg);

        for (auto& gp : points) {
            std::size_t k_pos = std::min<std::size_t>(static_cast<std::size_t>(gp.params.k), kmax_pos);
            std::size_t k_neg = std::min<std::size_t>(static_cast<std::size_t>(gp.params.k), kmax_neg);
            std::size_t w = 0;
            for (const auto* trial : inner_test) {
                std::vector<std::size_t> idxs;
                std::vector<double> deltas;
                for (std::size_t j = 0; j < trial->instances.size(); ++j, ++w) {
                    std::span<const double> dp(dists_pos[w].data(), k_pos);
                    std::span<const double> dn(dists_neg[w].data(), k_neg);
                    deltas.push_back(rules::log_kernel_density(dp, gp.params.gamma) -
                                     rules::log_kernel_density(dn, gp.params.gamma));
                    idxs.push_back(trial->instances[j].window_index);
                }
                auto trace = rules::aggregate_trace(trial->trial_id, idxs, deltas, gp.params);
                if (trace.prediction == trial->label) ++gp.correct;
                ++gp.total;
            }
        }
    }

    const GridPoint* best = &points.front();
    for (const auto& gp : points)
        if (grid_point_preferred(gp, *best)) best = &gp;
    return best->params;
}

namespace {

FoldResult run_fold(std::size_t fold_index, const FoldPlan::Fold& fold,
                    const std::map<std::string, const TrialRecording*>& by_id,
                    const ProtocolConfig& config) {
    std::uint64_t fold_seed = derive_seed(config.seed, 1000 + fold_index);

    // Leakage guard: the test ids must be disjoint from the PCA/bag set.
    std::set<std::string> test_ids(fold.test_ids.begin(), fold.test_ids.end());
    for (const auto& id : fold.train_ids)
        if (test_ids.count(id))
            throw InternalError("run_fold: test trial '" + id + "' leaked into the training split");

    std::vector<RawWindow> train_windows;
    std::vector<std::pair<const TrialRecording*, std::size_t>> train_ranges;  // trial, first window
    for (const auto& id : fold.train_ids) {
        const TrialRecording* trial = by_id.at(id);
        auto windows = ingest::windowize(*trial, config.window_samples);
        train_ranges.emplace_back(trial, train_windows.size());
        train_windows.insert(train_windows.end(), std::make_move_iterator(windows.begin()),
                             std::make_move_iterator(windows.end()));
    }

    pca::PcaProjector projector = pca::fit_pca(train_windows, config.d);

    std::vector<ProjectedTrial> train;
    for (std::size_t t = 0; t < train_ranges.size(); ++t) {
        auto [trial, first] = train_ranges[t];
        std::size_t last = t + 1 < train_ranges.size() ? train_ranges[t + 1].second : train_windows.size();
        ProjectedTrial pt;
        pt.trial_id = trial->trial_id;
        pt.label = *trial->label;
        for (std::size_t w = first; w < last; ++w)
            pt.instances.push_back(pca::project(projector, train_windows[w]));
        train.push_back(std::move(pt));
    }

    FoldResult result;
    result.fold = fold_index;
    result.params = grid_search(train, config.grid, config.method, config.inner_folds,
                                config.inner_test_size, derive_seed(fold_seed, 1),
                                config.gmi_clusters, config.min_evidence);

    SplitBags split = split_by_label(train);
    if (split.pos.empty() || split.neg.empty())
        throw InputError("run_fold: training split contains a single class");
    rules::Bag bag_pos = rules::Bag::from_instances(rules::Polarity::Positive, split.pos);
    rules::Bag bag_neg = rules::Bag::from_instances(rules::Polarity::Negative, split.neg);

    baselines::Codebook cb_pos, cb_neg;
    if (config.method == Method::GmiGen) {
        cb_pos = baselines::kmeans(bag_pos.points, std::min(config.gmi_clusters, bag_pos.size()),
                                   derive_seed(fold_seed, 2), rules::Polarity::Positive);
        cb_neg = baselines::kmeans(bag_neg.points, std::min(config.gmi_clusters, bag_neg.size()),
                                   derive_seed(fold_seed, 3), rules::Polarity::Negative);
    }

    std::vector<Label> predictions, labels;
    for (const auto& id : fold.test_ids) {
        const TrialRecording* trial = by_id.at(id);
        auto instances = pca::project_all(projector, ingest::windowize(*trial, config.window_samples));

        TrialPrediction tp;
        tp.fold = fold_index;
        tp.trial_id = id;
        tp.label = *trial->label;

        if (config.method == Method::Knn) {
            auto vote = baselines::knn_majority_trial(instances, bag_pos, bag_neg, result.params.k);
            tp.prediction = vote.prediction;
            tp.score = vote.am_window_fraction;
        } else {
            rules::IncrementTrace trace;
            switch (config.method) {
                case Method::Dpd:
                    trace = rules::classify_trial(instances, bag_pos, bag_neg, result.params);
                    break;
                case Method::NoDpd:
                    trace = baselines::no_dpd_trial(instances, bag_pos, bag_neg, result.params);
                    break;
                case Method::GmiGen:
                    trace = baselines::gmi_gen_trial(instances, cb_pos, cb_neg, result.params);
                    break;
                default:
                    throw InternalError("run_fold: bad method");
            }
            tp.prediction = trace.prediction;
            tp.no_evidence = trace.no_evidence;
            tp.score = trace.no_evidence ? -std::numeric_limits<double>::infinity() : trace.score;
            result.traces.push_back(std::move(trace));
        }
        predictions.push_back(tp.prediction);
        labels.push_back(tp.label);
        result.predictions.push_back(std::move(tp));
    }
    result.metrics = evaluate(predictions, labels);
    return result;
}

}  // namespace

CvResult run_cv(const std::vector<TrialRecording>& trials, const ProtocolConfig& config) {
    std::map<std::string, const TrialRecording*> by_id;
    std::vector<std::string> ids;
    for (const auto& t : trials) {
        if (!t.label) throw InputError("run_cv: trial '" + t.trial_id + "' has no label");
        by_id[t.trial_id] = &t;
        ids.push_back(t.trial_id);
    }

    FoldPlan plan = make_folds(ids, config.n_folds, config.test_size, config.seed);

    CvResult result;
    result.config = config;
    result.folds.resize(plan.folds.size());

    int threads = std::max(1, config.threads);
    if (threads == 1) {
        for (std::size_t f = 0; f < plan.folds.size(); ++f)
            result.folds[f] = run_fold(f, plan.folds[f], by_id, config);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(plan.folds.size());
        auto worker = [&] {
            while (true) {
                std::size_t f = next.fetch_add(1);
                if (f >= plan.folds.size()) return;
                try {
                    result.folds[f] = run_fold(f, plan.folds[f], by_id, config);
                } catch (...) {
                    errors[f] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::vector<Label> all_pred, all_label;
    std::vector<double> all_scores;
    for (const auto& fold : result.folds)
        for (const auto& p : fold.predictions) {
            all_pred.push_back(p.prediction);
            all_label.push_back(p.label);
            all_scores.push_back(p.score);
        }
    result.pooled = evaluate(all_pred, all_label);
    try {
        result.roc = roc_sweep(all_scores, all_label);
    } catch (const InputError&) {
        result.roc.reset();  // single-class test set
    }
    return result;
}

double mean_accuracy(const CvResult& result) {
    double sum = 0.0;
    for (const auto& f : result.folds) sum += f.metrics.accuracy;
    return sum / static_cast<double>(result.folds.size());
}

namespace {

std::string fmt_opt(const std::optional<double>& v) {
    return v ? csv::format_double(*v) : std::string();
}

struct Agg {
    double mean = 0.0, stddev = 0.0;
};

Agg aggregate(const std::vector<double>& xs) {
    Agg a;
    for (double x : xs) a.mean += x;
    a.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - a.mean) * (x - a.mean);
        a.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return a;
}

}  // namespace

void write_report(const std::string& dir, const CvResult& result) {
    std::filesystem::create_directories(dir);
    auto path = [&](const char* name) { return (std::filesystem::path(dir) / name).string(); };

    // metrics.csv: one row per fold plus mean/std rows.
    {
        std::ofstream out(path("metrics.csv"), std::ios::binary);
        if (!out) throw InputError("cannot write metrics.csv in " + dir);
        out << "fold,tp,fp,tn,fn,accuracy,sensitivity,specificity,false_positive_rate,precision,"
               "k,pi,lambda,gamma\n";
        std::vector<double> acc, sens, spec, fpr, prec;
        for (const auto& f : result.folds) {
            const Metrics& m = f.metrics;
            out << f.fold << ',' << m.tp << ',' << m.fp << ',' << m.tn << ',' << m.fn << ','
                << csv::format_double(m.accuracy) << ',' << csv::format_double(m.sensitivity) << ','
                << csv::format_double(m.specificity) << ','
                << csv::format_double(m.false_positive_rate) << ',' << fmt_opt(m.precision) << ','
                << f.params.k << ',' << csv::format_double(f.params.pi) << ','
                << csv::format_double(f.params.lambda) << ',' << csv::format_double(f.params.gamma)
                << '\n';
            acc.push_back(m.accuracy);
            sens.push_back(m.sensitivity);
            spec.push_back(m.specificity);
            fpr.push_back(m.false_positive_rate);
            if (m.precision) prec.push_back(*m.precision);
        }
        auto row = [&](const char* tag, auto pick) {
            out << tag << ",,,,," << csv::format_double(pick(aggregate(acc))) << ','
                << csv::format_double(pick(aggregate(sens))) << ','
                << csv::format_double(pick(aggregate(spec))) << ','
                << csv::format_double(pick(aggregate(fpr))) << ','
                << (prec.empty() ? std::string() : csv::format_double(pick(aggregate(prec))))
                << ",,,,\n";
        };
        row("mean", [](const Agg& a) { return a.mean; });
        row("std", [](const Agg& a) { return a.stddev; });
    }

    // roc.csv
    {
        std::ofstream out(path("roc.csv"), std::ios::binary);
        if (!out) throw InputError("cannot write roc.csv in " + dir);
        if (result.roc) out << "# auc=" << csv::format_double(result.roc->auc) << '\n';
        out << "fpr,tpr\n";
        if (result.roc)
            for (const auto& [x, y] : result.roc->points)
                out << csv::format_double(x) << ',' << csv::format_double(y) << '\n';
    }

    // predictions.csv
    {
        std::ofstream out(path("predictions.csv"), std::ios::binary);
        if (!out) throw InputError("cannot write predictions.csv in " + dir);
        out << "fold,trial_id,label,prediction,score,no_evidence\n";
        for (const auto& f : result.folds)
            for (const auto& p : f.predictions)
                out << p.fold << ',' << p.trial_id << ',' << (p.label == Label::AM ? "AM" : "TD")
                    << ',' << (p.prediction == Label::AM ? "AM" : "TD") << ','
                    << csv::format_double(p.score) << ',' << (p.no_evidence ? 1 : 0) << '\n';
    }

    // report.txt
    {
        std::ofstream out(path("report.txt"), std::ios::binary);
        if (!out) throw InputError("cannot write report.txt in " + dir);
        out << "method: " << method_name(result.config.method) << "\n";
        out << "seed: " << result.config.seed << "  folds: " << result.config.n_folds
            << "  test size: " << result.config.test_size << "  d: " << result.config.d
            << "  window samples: " << result.config.window_samples << "\n\n";
        out << "fold  acc     sens    spec    fpr     prec    k  pi        lambda   gamma\n";
        std::vector<double> acc;
        char buf[256];
        for (const auto& f : result.folds) {
            const Metrics& m = f.metrics;
            std::snprintf(buf, sizeof(buf), "%-5zu %-7.3f %-7.3f %-7.3f %-7.3f %-7s %-2d %-9.4g %-8.4g %-6.4g\n",
                          f.fold, m.accuracy, m.sensitivity, m.specificity, m.false_positive_rate,
                          m.precision ? std::to_string(*m.precision).substr(0, 5).c_str() : "-",
                          f.params.k, f.params.pi, f.params.lambda, f.params.gamma);
            out << buf;
            acc.push_back(m.accuracy);
        }
        Agg a = aggregate(acc);
        std::snprintf(buf, sizeof(buf), "\nmean accuracy: %.4f (%.4f)\n", a.mean, a.stddev);
        out << buf;
        if (result.roc) {
            std::snprintf(buf, sizeof(buf), "pooled AUC: %.4f\n", result.roc->auc);
            out << buf;
        }
    }
}

}  // namespace dpdkit::eval
