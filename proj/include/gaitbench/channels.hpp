#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace gaitbench {

enum class Feature {
    pelvis_tilt,
    pelvis_obliquity,
    pelvis_rotation,
    hip_flexion,
    hip_adduction,
    hip_rotation,
    knee_flexion,
    ankle_dorsiflexion,
};

enum class Side { left, right, center };

std::string_view to_string(Feature f);
std::string_view to_string(Side s);
std::optional<Feature> parse_feature(std::string_view text);
std::optional<Side> parse_side(std::string_view text);

inline bool is_pelvis(Feature f) {
    return f == Feature::pelvis_tilt || f == Feature::pelvis_obliquity ||
           f == Feature::pelvis_rotation;
}

// One of the 13 valid (feature, side) combinations: pelvis features are
// center-only, everything else is bilateral.
struct ChannelId {
    Feature feature;
    Side side;

    auto operator<=>(const ChannelId&) const = default;
};

bool is_valid_channel(const ChannelId& id);

// Canonical layout order: pelvis_tilt, pelvis_obliquity, pelvis_rotation,
// then left/right pairs of hip_flexion, hip_adduction, hip_rotation,
// knee_flexion, ankle_dorsiflexion.
const std::array<ChannelId, 13>& canonical_channels();

// Index of a channel in the canonical order, or -1 if invalid.
int canonical_index(const ChannelId& id);

std::string channel_name(const ChannelId& id);  // e.g. "hip_flexion/left"

}  // namespace gaitbench
