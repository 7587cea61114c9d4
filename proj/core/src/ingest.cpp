// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpdkit/ingest.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "dpdkit/csv.hpp"

namespace fs = std::filesystem;

namespace dpdkit::ingest {

namespace {

const char* kHeader = "t,lw_x,lw_y,lw_z,rw_x,rw_y,rw_z,la_x,la_y,la_z,ra_x,ra_y,ra_z";

void parse_meta_file(const std::string& path, TrialRecording& trial) {
    auto kv = csv::read_kv_file(path);
    if (auto it = kv.find("label"); it != kv.end()) {
        if (it->second == "AM")
            trial.label = Label::AM;
        else if (it->second == "TD")
            trial.label = Label::TD;
        else
            throw InputError(path + ": label must be AM or TD, got '" + it->second + "'");
    }
    if (auto it = kv.find("age_month"); it != kv.end()) {
        long m = csv::parse_long(it->second, path + " age_month");
        if (m < 1 || m > 6) throw InputError(path + ": age_month must be in 1..6");
        trial.meta.age_month = static_cast<int>(m);
    }
    if (auto it = kv.find("preterm"); it != kv.end())
        trial.meta.preterm = (it->second == "1" || it->second == "true" || it->second == "yes");
}

}  // namespace

std::vector<double> compute_svm_channel(const LimbStream& stream) {
    if (stream.samples.empty()) throw InputError("compute_svm_channel: empty stream");
    std::vector<double> out;
    out.reserve(stream.samples.size());
    for (std::size_t i = 0; i < stream.samples.size(); ++i) {
        const Sample3& s = stream.samples[i];
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.z))
            throw InputError("compute_svm_channel: non-finite sample at index " + std::to_string(i));
        out.push_back(std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z));
    }
    return out;
}

std::vector<RawWindow> windowize(const TrialRecording& trial, std::size_t window_samples) {
    if (window_samples == 0) throw InputError("windowize: window_samples must be positive");
    std::size_t len = trial.streams[0].samples.size();
    for (const auto& s : trial.streams)
        if (s.samples.size() != len)
            throw InputError("windowize: limb streams of trial '" + trial.trial_id +
                             "' have mismatched lengths");
    if (len < window_samples)
        throw InputError("trial too short: '" + trial.trial_id + "' has " + std::to_string(len) +
                         " samples, need at least " + std::to_string(window_samples));

    // Precompute SVM once per limb.
    std::array<std::vector<double>, kNumLimbs> svm;
    for (int l = 0; l < kNumLimbs; ++l) svm[l] = compute_svm_channel(trial.streams[l]);

    std::size_t n_windows = len / window_samples;
    std::vector<RawWindow> windows;
    windows.reserve(n_windows);
    for (std::size_t w = 0; w < n_windows; ++w) {
        RawWindow win;
        win.trial_id = trial.trial_id;
        win.window_index = w;
        win.start_sample = w * window_samples;
        win.values.reserve(kNumChannels * window_samples);
        for (int l = 0; l < kNumLimbs; ++l) {
            const auto& samples = trial.streams[l].samples;
            for (std::size_t t = 0; t < window_samples; ++t) win.values.push_back(samples[win.start_sample + t].x);
            for (std::size_t t = 0; t < window_samples; ++t) win.values.push_back(samples[win.start_sample + t].y);
            for (std::size_t t = 0; t < window_samples; ++t) win.values.push_back(samples[win.start_sample + t].z);
            for (std::size_t t = 0; t < window_samples; ++t) win.values.push_back(svm[l][win.start_sample + t]);
        }
        windows.push_back(std::move(win));
    }
    return windows;
}

TrialRecording load_trial_csv(const std::string& path) {
    auto lines = csv::read_lines(path);
    if (lines.empty()) throw InputError(path + ": empty file");
    if (lines[0] != kHeader)
        throw InputError(path + ":1: bad header, expected '" + std::string(kHeader) + "'");

    TrialRecording trial;
    trial.trial_id = fs::path(path).stem().string();
    for (int l = 0; l < kNumLimbs; ++l) trial.streams[l].limb = kLimbOrder[l];

    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty() && i + 1 == lines.size()) break;  // trailing newline
        auto cells = csv::split(lines[i]);
        std::string ctx = path + ":" + std::to_string(i + 1);
        if (cells.size() != 13)
            throw InputError(ctx + ": expected 13 columns, got " + std::to_string(cells.size()));
        csv::parse_long(cells[0], ctx + " column t");
        for (int l = 0; l < kNumLimbs; ++l) {
            Sample3 s;
            s.x = csv::parse_double(cells[1 + 3 * l + 0], ctx);
            s.y = csv::parse_double(cells[1 + 3 * l + 1], ctx);
            s.z = csv::parse_double(cells[1 + 3 * l + 2], ctx);
            trial.streams[l].samples.push_back(s);
        }
    }
    if (trial.streams[0].samples.empty()) throw InputError("trial too short: " + path + " has no data rows");

    fs::path meta = fs::path(path).replace_extension(".meta");
    if (fs::exists(meta)) parse_meta_file(meta.string(), trial);
    return trial;
}

std::vector<TrialRecording> load_dataset(const std::string& dir) {
    fs::path manifest = fs::path(dir) / "manifest.csv";
    auto lines = csv::read_lines(manifest.string());
    if (lines.empty() || lines[0] != "file,label")
        throw InputError(manifest.string() + ": expected header 'file,label'");

    std::vector<TrialRecording> trials;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto cells = csv::split(lines[i]);
        if (cells.size() != 2)
            throw InputError(manifest.string() + ":" + std::to_string(i + 1) + ": expected 2 columns");
        TrialRecording trial = load_trial_csv((fs::path(dir) / cells[0]).string());
        if (cells[1] == "AM")
            trial.label = Label::AM;
        else if (cells[1] == "TD")
            trial.label = Label::TD;
        else if (!cells[1].empty())
            throw InputError(manifest.string() + ":" + std::to_string(i + 1) +
                             ": label must be AM, TD, or empty");
        trials.push_back(std::move(trial));
    }
    return trials;
}

}  // namespace dpdkit::ingest
