// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// dpdkit command line: synth | fit | classify | cv.
// Exit codes: 0 success, 2 usage/input error, 3 internal invariant violation.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "dpdkit/csv.hpp"
#include "dpdkit/eval.hpp"
#include "dpdkit/ingest.hpp"
#include "dpdkit/model_io.hpp"
#include "dpdkit/pca.hpp"
#include "dpdkit/synth.hpp"

namespace fs = std::filesystem;
using namespace dpdkit;

namespace {

struct SynthArgs {
    std::string config;
    std::string out;
    std::int64_t seed = -1;  // -1: keep the config's seed
};

void cmd_synth(const SynthArgs& args) {
    synth::SynthConfig cfg = synth::load_config(args.config);
    if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
    synth::write_dataset(args.out, synth::generate(cfg));
    std::cout << "wrote " << cfg.n_pos + cfg.n_neg << " trials to " << args.out << "\n";
}

struct FitArgs {
    std::string data;
    std::string model;
    int d = 100;
    std::size_t window_samples = 100;
    int k = 5;
    double pi = 0.0;
    double lambda = 0.0;
    double gamma = 1.0;
    std::size_t min_evidence = 0;
    std::uint64_t seed = 0;
};

void cmd_fit(const FitArgs& args) {
    auto trials = ingest::load_dataset(args.data);
    if (trials.empty()) throw InputError("fit: dataset is empty");
    for (const auto& t : trials)
        if (!t.label) throw InputError("fit: trial '" + t.trial_id + "' has no label in the manifest");

    std::vector<RawWindow> windows;
    std::vector<std::pair<Label, std::pair<std::size_t, std::size_t>>> ranges;
    for (const auto& t : trials) {
        auto w = ingest::windowize(t, args.window_samples);
        ranges.push_back({*t.label, {windows.size(), windows.size() + w.size()}});
        windows.insert(windows.end(), std::make_move_iterator(w.begin()),
                       std::make_move_iterator(w.end()));
    }

    model::ModelArchive m;
    m.projector = pca::fit_pca(windows, args.d);
    m.params = {args.k, args.pi, args.lambda, args.gamma, args.min_evidence};
    m.params.validate();
    m.window_samples = args.window_samples;
    m.seed = args.seed;

    std::vector<InstanceVector> pos, neg;
    for (const auto& [label, range] : ranges)
        for (std::size_t w = range.first; w < range.second; ++w)
            (label == Label::AM ? pos : neg).push_back(pca::project(m.projector, windows[w]));
    if (pos.empty() || neg.empty())
        throw InputError("fit: dataset must contain both AM and TD trials");
    m.bag_pos = rules::Bag::from_instances(rules::Polarity::Positive, pos);
    m.bag_neg = rules::Bag::from_instances(rules::Polarity::Negative, neg);

    model::save_model(args.model, m);
    std::cout << "model saved to " << args.model << " (bag sizes " << m.bag_pos.size() << "/"
              << m.bag_neg.size() << ")\n";
}

struct ClassifyArgs {
    std::string model;
    std::string trial;
    std::string trace;
};

void cmd_classify(const ClassifyArgs& args) {
    model::ModelArchive m = model::load_model(args.model);
    TrialRecording trial = ingest::load_trial_csv(args.trial);
    auto instances = pca::project_all(m.projector, ingest::windowize(trial, m.window_samples));
    rules::IncrementTrace trace = rules::classify_trial(instances, m.bag_pos, m.bag_neg, m.params);
    if (!args.trace.empty()) rules::write_trace_csv(args.trace, trace, m.window_samples);
    std::cout << trial.trial_id << " prediction=" << (trace.prediction == Label::AM ? "AM" : "TD")
              << " score=" << csv::format_double(trace.score)
              << " no_evidence=" << (trace.no_evidence ? 1 : 0) << "\n";
}

struct CvArgs {
    std::string data;
    std::string out;
    eval::ProtocolConfig config;
    std::string method = "dpd";
};

void cmd_cv(CvArgs& args) {
    args.config.method = eval::parse_method(args.method);
    auto trials = ingest::load_dataset(args.data);
    eval::CvResult result = eval::run_cv(trials, args.config);
    eval::write_report(args.out, result);
    std::cout << "mean accuracy: " << csv::format_double(eval::mean_accuracy(result))
              << " (report in " << args.out << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak-label trial classification toolkit for multi-accelerometer recordings"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a labelled synthetic dataset");
    synth_cmd->add_option("--config", synth_args.config, "key/value config file")->required();
    synth_cmd->add_option("--out", synth_args.out, "output dataset directory")->required();
    synth_cmd->add_option("--seed", synth_args.seed, "override the config's seed");

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Fit PCA + bags on a labelled dataset");
    fit_cmd->add_option("--data", fit_args.data, "dataset directory")->required();
    fit_cmd->add_option("--model", fit_args.model, "output model directory")->required();
    fit_cmd->add_option("--d", fit_args.d, "PCA dimension");
    fit_cmd->add_option("--window-samples", fit_args.window_samples, "samples per window");
    fit_cmd->add_option("--k", fit_args.k, "neighbour count");
    fit_cmd->add_option("--pi", fit_args.pi, "window rule threshold");
    fit_cmd->add_option("--lambda", fit_args.lambda, "trial rule threshold");
    fit_cmd->add_option("--gamma", fit_args.gamma, "kernel scale");
    fit_cmd->add_option("--min-evidence", fit_args.min_evidence,
                        "minimum unmasked windows for an AM call (0 disables)");
    fit_cmd->add_option("--seed", fit_args.seed, "recorded in the archive manifest");

    ClassifyArgs classify_args;
    auto* classify_cmd = app.add_subcommand("classify", "Classify one trial with a saved model");
    classify_cmd->add_option("--model", classify_args.model, "model directory")->required();
    classify_cmd->add_option("--trial", classify_args.trial, "trial CSV file")->required();
    classify_cmd->add_option("--trace", classify_args.trace, "write the per-window trace CSV here");

    CvArgs cv_args;
    auto* cv_cmd = app.add_subcommand("cv", "Cross-validated evaluation with inner grid search");
    cv_cmd->add_option("--data", cv_args.data, "dataset directory")->required();
    cv_cmd->add_option("--out", cv_args.out, "report output directory")->required();
    cv_cmd->add_option("--method", cv_args.method, "dpd|no-dpd|knn|gmi-gen");
    cv_cmd->add_option("--seed", cv_args.config.seed, "root seed");
    cv_cmd->add_option("--folds", cv_args.config.n_folds, "outer folds");
    cv_cmd->add_option("--test-size", cv_args.config.test_size, "test trials per fold");
    cv_cmd->add_option("--inner-folds", cv_args.config.inner_folds, "inner folds");
    cv_cmd->add_option("--inner-test-size", cv_args.config.inner_test_size,
                       "test trials per inner fold");
    cv_cmd->add_option("--d", cv_args.config.d, "PCA dimension");
    cv_cmd->add_option("--window-samples", cv_args.config.window_samples, "samples per window");
    cv_cmd->add_option("--threads", cv_args.config.threads, "parallel outer folds");
    cv_cmd->add_option("--gmi-clusters", cv_args.config.gmi_clusters, "codebook size per bag");
    cv_cmd->add_option("--min-evidence", cv_args.config.min_evidence,
                       "minimum unmasked windows for an AM call (0 disables)");
    cv_cmd->add_option("--grid-k", cv_args.config.grid.ks, "k grid")->delimiter(',');
    cv_cmd->add_option("--grid-pi", cv_args.config.grid.pis, "pi grid (default: adaptive)")
        ->delimiter(',');
    cv_cmd->add_option("--grid-lambda", cv_args.config.grid.lambdas, "lambda grid")->delimiter(',');
    cv_cmd->add_option("--grid-gamma", cv_args.config.grid.gammas, "gamma grid")->delimiter(',');

    try {
        app.parse(argc, argv);
        if (*synth_cmd) cmd_synth(synth_args);
        if (*fit_cmd) cmd_fit(fit_args);
        if (*classify_cmd) cmd_classify(classify_args);
        if (*cv_cmd) cmd_cv(cv_args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
