// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPDKIT_INGEST_HPP
#define DPDKIT_INGEST_HPP

#include <string>
#include <vector>

#include "dpdkit/types.hpp"

namespace dpdkit::ingest {

inline constexpr std::size_t kDefaultWindowSamples = 100;

/// Per-sample Signal Vector Magnitude sqrt(x^2 + y^2 + z^2). Rejects
/// non-finite samples, reporting the offending sample index.
std::vector<double> compute_svm_channel(const LimbStream& stream);

/// Segments a trial into non-overlapping, contiguous windows of
/// `window_samples` samples. The trailing partial window is dropped.
/// Each window is the channel-major flattening (limb -> x,y,z,SVM -> time)
/// described in RawWindow.
std::vector<RawWindow> windowize(const TrialRecording& trial,
                                 std::size_t window_samples = kDefaultWindowSamples);

/// Loads one trial CSV (header `t,lw_x,...,ra_z`, 13 columns). Label and
/// metadata are read from the sidecar `<path without .csv>.meta` when it
/// exists.
TrialRecording load_trial_csv(const std::string& path);

/// A dataset directory: trial CSVs plus `manifest.csv` with header
/// `file,label` (label AM, TD, or empty for unlabelled).
std::vector<TrialRecording> load_dataset(const std::string& dir);

}  // namespace dpdkit::ingest

#endif  // DPDKIT_INGEST_HPP
