// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPDKIT_TYPES_HPP
#define DPDKIT_TYPES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpdkit {

/// Error raised by malformed input files or configs. The CLI maps it to
/// exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error raised when an internal invariant is violated. The CLI maps it
/// to exit code 3.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Limb : int { LeftWrist = 0, RightWrist = 1, LeftAnkle = 2, RightAnkle = 3 };
inline constexpr int kNumLimbs = 4;
inline constexpr std::array<Limb, kNumLimbs> kLimbOrder = {
    Limb::LeftWrist, Limb::RightWrist, Limb::LeftAnkle, Limb::RightAnkle};

/// Trial-level label: AM (abnormal movements, positive) vs TD (typically
/// developing, negative).
enum class Label : int { TD = 0, AM = 1 };

struct Sample3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// One limb's tri-axial accelerometer stream.
struct LimbStream {
    Limb limb = Limb::LeftWrist;
    std::vector<Sample3> samples;
    double rate = 100.0;  // samples/second
};

struct TrialMeta {
    std::optional<int> age_month;  // 1..6
    std::optional<bool> preterm;
};

/// One supine recording session: four synchronised limb streams plus an
/// optional trial-level label.
struct TrialRecording {
    std::string trial_id;
    std::array<LimbStream, kNumLimbs> streams;  // indexed by Limb
    std::optional<Label> label;
    TrialMeta meta;

    std::size_t num_samples() const { return streams[0].samples.size(); }
};

/// One fixed-length non-overlapping window of raw signals, flattened
/// channel-major: for each limb LW,RW,LA,RA, channels x,y,z,SVM, each
/// window_samples consecutive values. 16 x 100 = 1600 values at defaults.
struct RawWindow {
    std::string trial_id;
    std::size_t window_index = 0;
    std::size_t start_sample = 0;
    std::vector<double> values;
};

inline constexpr int kChannelsPerLimb = 4;  // x, y, z, SVM
inline constexpr int kNumChannels = kNumLimbs * kChannelsPerLimb;

/// One window after PCA projection; a multiple-instance-learning instance.
struct InstanceVector {
    std::string trial_id;
    std::size_t window_index = 0;
    std::vector<double> features;
};

}  // namespace dpdkit

#endif  // DPDKIT_TYPES_HPP
