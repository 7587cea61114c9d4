// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Ground-truth-labelled synthetic trial generator. Windows are drawn from
// three latent classes (wAM / wTD / wNM); discriminative windows shift the
// raw channels by +/- separation along a fixed unit pattern. Used as the
// verification oracle for the whole pipeline.

#ifndef DPDKIT_SYNTH_HPP
#define DPDKIT_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dpdkit/rules.hpp"
#include "dpdkit/types.hpp"

namespace dpdkit::synth {

struct SynthConfig {
    std::uint64_t seed = 0;
    std::size_t n_pos = 10;  // AM trials
    std::size_t n_neg = 10;  // TD trials
    std::size_t windows_min = 30;
    std::size_t windows_max = 50;
    std::size_t window_samples = 100;
    double rate = 100.0;
    double neutral_fraction = 0.8;  // P(window is wNM)
    double cross_leak = 0.05;       // P(AM trial emits a wTD window), mirrored for TD
    double separation = 0.3;        // class-pattern distance in raw-signal space
    double noise_sd = 0.05;         // per-channel Gaussian noise

    void validate() const;
};

struct SynthTrial {
    TrialRecording recording;                      // label set
    std::vector<rules::WindowClass> window_classes;  // ground truth per window
};

/// Deterministic given config.seed; trials use independently derived
/// per-trial seeds.
std::vector<SynthTrial> generate(const SynthConfig& config);

/// The fixed unit pattern over the 12 raw channels that discriminative
/// windows add (scaled by +/- separation).
std::vector<double> class_pattern();

/// Writes the dataset directory ingest consumes (trial CSVs +
/// manifest.csv) plus ground_truth.csv (trial_id,window_index,class).
void write_dataset(const std::string& dir, const std::vector<SynthTrial>& dataset);

/// Reads ground_truth.csv back: per trial_id the window class sequence.
std::vector<std::pair<std::string, std::vector<rules::WindowClass>>> read_ground_truth(
    const std::string& path);

/// Parses a plain-text key/value synth config file.
SynthConfig load_config(const std::string& path);

}  // namespace dpdkit::synth

#endif  // DPDKIT_SYNTH_HPP
