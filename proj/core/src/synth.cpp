// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpdkit/synth.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "dpdkit/csv.hpp"
#include "dpdkit/rng.hpp"

namespace fs = std::filesystem;

namespace dpdkit::synth {

void SynthConfig::validate() const {
    if (n_pos + n_neg == 0) throw InputError("synth: need at least one trial");
    if (windows_min < 1 || windows_min > windows_max)
        throw InputError("synth: invalid windows_per_trial range");
    if (window_samples < 1) throw InputError("synth: window_samples must be >= 1");
    if (neutral_fraction < 0.0 || neutral_fraction > 1.0 || cross_leak < 0.0 || cross_leak > 1.0)
        throw InputError("synth: probabilities must lie in [0,1]");
    if (neutral_fraction + cross_leak > 1.0)
        throw InputError("synth: neutral_fraction + cross_leak must be <= 1");
    if (separation < 0.0) throw InputError("synth: separation must be >= 0");
    if (!(noise_sd > 0.0)) throw InputError("synth: noise_sd must be > 0");
}

std::vector<double> class_pattern() {
    std::vector<double> u(12);
    double norm = 0.0;
    for (int c = 0; c < 12; ++c) {
        u[c] = std::sin(1.0 + c);
        norm += u[c] * u[c];
    }
    norm = std::sqrt(norm);
    for (double& v : u) v /= norm;
    return u;
}

namespace {

SynthTrial make_trial(const SynthConfig& cfg, std::uint64_t trial_seed, const std::string& id,
                      Label label, const std::vector<double>& u) {
    Rng rng(trial_seed);
    std::uniform_int_distribution<std::size_t> win_dist(cfg.windows_min, cfg.windows_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, cfg.noise_sd);

    SynthTrial trial;
    trial.recording.trial_id = id;
    trial.recording.label = label;
    for (int l = 0; l < kNumLimbs; ++l) trial.recording.streams[l].limb = kLimbOrder[l];
    for (int l = 0; l < kNumLimbs; ++l) trial.recording.streams[l].rate = cfg.rate;

    std::size_t n_windows = win_dist(rng);
    std::size_t n_samples = n_windows * cfg.window_samples;
    for (int l = 0; l < kNumLimbs; ++l) trial.recording.streams[l].samples.resize(n_samples);

    double own_fraction = 1.0 - cfg.neutral_fraction - cfg.cross_leak;
    for (std::size_t w = 0; w < n_windows; ++w) {
        double r = unit(rng);
        rules::WindowClass cls;
        if (r < own_fraction)
            cls = label == Label::AM ? rules::WindowClass::wAM : rules::WindowClass::wTD;
        else if (r < own_fraction + cfg.cross_leak)
            cls = label == Label::AM ? rules::WindowClass::wTD : rules::WindowClass::wAM;
        else
            cls = rules::WindowClass::wNM;
        trial.window_classes.push_back(cls);

        double sign = cls == rules::WindowClass::wAM ? 1.0
                      : cls == rules::WindowClass::wTD ? -1.0
                                                       : 0.0;
        for (std::size_t t = 0; t < cfg.window_samples; ++t) {
            std::size_t s = w * cfg.window_samples + t;
            for (int l = 0; l < kNumLimbs; ++l) {
                Sample3& sample = trial.recording.streams[l].samples[s];
                sample.x = noise(rng) + sign * cfg.separation * u[3 * l + 0];
                sample.y = noise(rng) + sign * cfg.separation * u[3 * l + 1];
                sample.z = noise(rng) + sign * cfg.separation * u[3 * l + 2];
            }
        }
    }
    return trial;
}

}  // namespace

std::vector<SynthTrial> generate(const SynthConfig& config) {
    config.validate();
    std::vector<double> u = class_pattern();
    std::vector<SynthTrial> dataset;
    dataset.reserve(config.n_pos + config.n_neg);
    char id[32];
    for (std::size_t i = 0; i < config.n_pos; ++i) {
        std::snprintf(id, sizeof(id), "am_%03zu", i);
        dataset.push_back(make_trial(config, derive_seed(config.seed, i), id, Label::AM, u));
    }
    for (std::size_t i = 0; i < config.n_neg; ++i) {
        std::snprintf(id, sizeof(id), "td_%03zu", i);
        dataset.push_back(
            make_trial(config, derive_seed(config.seed, config.n_pos + i), id, Label::TD, u));
    }
    return dataset;
}

void write_dataset(const std::string& dir, const std::vector<SynthTrial>& dataset) {
    fs::create_directories(dir);
    std::ofstream manifest((fs::path(dir) / "manifest.csv").string(), std::ios::binary);
    std::ofstream gt((fs::path(dir) / "ground_truth.csv").string(), std::ios::binary);
    if (!manifest || !gt) throw InputError("cannot write dataset files in " + dir);
    manifest << "file,label\n";
    gt << "trial_id,window_index,class\n";

    for (const auto& trial : dataset) {
        std::string file = trial.recording.trial_id + ".csv";
        manifest << file << ',' << (*trial.recording.label == Label::AM ? "AM" : "TD") << '\n';
        for (std::size_t w = 0; w < trial.window_classes.size(); ++w)
            gt << trial.recording.trial_id << ',' << w << ','
               << rules::window_class_name(trial.window_classes[w]) << '\n';

        std::ofstream out((fs::path(dir) / file).string(), std::ios::binary);
        if (!out) throw InputError("cannot write trial file " + file);
        out << "t,lw_x,lw_y,lw_z,rw_x,rw_y,rw_z,la_x,la_y,la_z,ra_x,ra_y,ra_z\n";
        std::size_t n = trial.recording.num_samples();
        for (std::size_t s = 0; s < n; ++s) {
            out << s;
            for (int l = 0; l < kNumLimbs; ++l) {
                const Sample3& sample = trial.recording.streams[l].samples[s];
                out << ',' << csv::format_double(sample.x) << ',' << csv::format_double(sample.y)
                    << ',' << csv::format_double(sample.z);
            }
            out << '\n';
        }
    }
}

std::vector<std::pair<std::string, std::vector<rules::WindowClass>>> read_ground_truth(
    const std::string& path) {
    auto lines = csv::read_lines(path);
    if (lines.empty() || lines[0] != "trial_id,window_index,class")
        throw InputError(path + ": expected header 'trial_id,window_index,class'");
    std::vector<std::pair<std::string, std::vector<rules::WindowClass>>> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto cells = csv::split(lines[i]);
        if (cells.size() != 3)
            throw InputError(path + ":" + std::to_string(i + 1) + ": expected 3 columns");
        rules::WindowClass cls;
        if (cells[2] == "wAM") cls = rules::WindowClass::wAM;
        else if (cells[2] == "wTD") cls = rules::WindowClass::wTD;
        else if (cells[2] == "wNM") cls = rules::WindowClass::wNM;
        else throw InputError(path + ":" + std::to_string(i + 1) + ": unknown class " + cells[2]);
        if (out.empty() || out.back().first != cells[0]) out.emplace_back(cells[0], std::vector<rules::WindowClass>{});
        out.back().second.push_back(cls);
    }
    return out;
}

SynthConfig load_config(const std::string& path) {
    auto kv = csv::read_kv_file(path);
    SynthConfig cfg;
    auto get = [&](const char* key, auto setter) {
        if (auto it = kv.find(key); it != kv.end()) setter(it->second);
    };
    auto as_u64 = [&](const std::string& v, const char* key) {
        return static_cast<std::uint64_t>(csv::parse_long(v, path + " " + key));
    };
    auto as_size = [&](const std::string& v, const char* key) {
        long x = csv::parse_long(v, path + " " + key);
        if (x < 0) throw InputError(path + ": " + key + " must be nonnegative");
        return static_cast<std::size_t>(x);
    };
    get("seed", [&](const std::string& v) { cfg.seed = as_u64(v, "seed"); });
    get("n_pos", [&](const std::string& v) { cfg.n_pos = as_size(v, "n_pos"); });
    get("n_neg", [&](const std::string& v) { cfg.n_neg = as_size(v, "n_neg"); });
    get("windows_min", [&](const std::string& v) { cfg.windows_min = as_size(v, "windows_min"); });
    get("windows_max", [&](const std::string& v) { cfg.windows_max = as_size(v, "windows_max"); });
    get("window_samples",
        [&](const std::string& v) { cfg.window_samples = as_size(v, "window_samples"); });
    get("rate", [&](const std::string& v) { cfg.rate = csv::parse_double(v, path + " rate"); });
    get("neutral_fraction", [&](const std::string& v) {
        cfg.neutral_fraction = csv::parse_double(v, path + " neutral_fraction");
    });
    get("cross_leak",
        [&](const std::string& v) { cfg.cross_leak = csv::parse_double(v, path + " cross_leak"); });
    get("separation",
        [&](const std::string& v) { cfg.separation = csv::parse_double(v, path + " separation"); });
    get("noise_sd",
        [&](const std::string& v) { cfg.noise_sd = csv::parse_double(v, path + " noise_sd"); });
    cfg.validate();
    return cfg;
}

}  // namespace dpdkit::synth
