#pragma once

#include <map>
#include <string>
#include <vector>

#include "gaitbench/cycle.hpp"

namespace gaitbench {

// Output of upstream manual segmentation: uniformly sampled channel series
// of arbitrary (>= 4) length over one gait cycle.
struct RawCycle {
    std::string subject_id;
    ClassLabel label = ClassLabel::NORMAL;
    int cycle_index = 0;
    std::map<ChannelId, std::vector<double>> channels;
};

// Wide-format vector, canonical channel-major layout, 13 x 11 = 143 dims.
using FeatureVector = std::vector<double>;

}  // namespace gaitbench
