#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gaitbench/channels.hpp"
#include "gaitbench/labels.hpp"

namespace gaitbench {

// 11 samples at 0%,10%,...,100% of the gait cycle, degrees.
using Waveform11 = std::array<double, 11>;

inline constexpr int kTimepoints = 11;
inline constexpr int kNumChannels = 13;
inline constexpr int kFeatureDim = kNumChannels * kTimepoints;  // 143

using ChannelMap = std::map<ChannelId, Waveform11>;

struct GaitCycle {
    std::string subject_id;
    ClassLabel label = ClassLabel::NORMAL;
    int cycle_index = 0;
    ChannelMap channels;
};

struct Dataset {
    std::vector<GaitCycle> cycles;

    std::set<std::string> subjects() const;
};

struct Violation {
    std::string subject_id;
    std::string label;
    int cycle_index = 0;
    std::string channel;   // empty when not channel-specific
    int timepoint = -1;    // -1 when not timepoint-specific
    std::string kind;      // "missing-channel", "extra-channel", "non-finite", "duplicate-key"
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks cycle/dataset invariants: all 13 channels present, no extras,
// finite values, unique (subject, label, cycle_index) keys. Never throws.
ValidationReport validate_dataset(const Dataset& d);

}  // namespace gaitbench
