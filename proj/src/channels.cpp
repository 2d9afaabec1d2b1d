#include "gaitbench/channels.hpp"

namespace gaitbench {

std::string_view to_string(Feature f) {
    switch (f) {
        case Feature::pelvis_tilt: return "pelvis_tilt";
        case Feature::pelvis_obliquity: return "pelvis_obliquity";
        case Feature::pelvis_rotation: return "pelvis_rotation";
        case Feature::hip_flexion: return "hip_flexion";
        case Feature::hip_adduction: return "hip_adduction";
        case Feature::hip_rotation: return "hip_rotation";
        case Feature::knee_flexion: return "knee_flexion";
        case Feature::ankle_dorsiflexion: return "ankle_dorsiflexion";
    }
    return "?";
}

std::string_view to_string(Side s) {
    switch (s) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::center: return "center";
    }
    return "?";
}

std::optional<Feature> parse_feature(std::string_view text) {
    for (Feature f : {Feature::pelvis_tilt, Feature::pelvis_obliquity, Feature::pelvis_rotation,
                      Feature::hip_flexion, Feature::hip_adduction, Feature::hip_rotation,
                      Feature::knee_flexion, Feature::ankle_dorsiflexion}) {
        if (text == to_string(f)) return f;
    }
    return std::nullopt;
}

std::optional<Side> parse_side(std::string_view text) {
    for (Side s : {Side::left, Side::right, Side::center}) {
        if (text == to_string(s)) return s;
    }
    return std::nullopt;
}

bool is_valid_channel(const ChannelId& id) {
    if (is_pelvis(id.feature)) return id.side == Side::center;
    return id.side == Side::left || id.side == Side::right;
}

const std::array<ChannelId, 13>& canonical_channels() {
    static const std::array<ChannelId, 13> order = {{
        {Feature::pelvis_tilt, Side::center},
        {Feature::pelvis_obliquity, Side::center},
        {Feature::pelvis_rotation, Side::center},
        {Feature::hip_flexion, Side::left},
        {Feature::hip_flexion, Side::right},
        {Feature::hip_adduction, Side::left},
        {Feature::hip_adduction, Side::right},
        {Feature::hip_rotation, Side::left},
        {Feature::hip_rotation, Side::right},
        {Feature::knee_flexion, Side::left},
        {Feature::knee_flexion, Side::right},
        {Feature::ankle_dorsiflexion, Side::left},
        {Feature::ankle_dorsiflexion, Side::right},
    }};
    return order;
}

int canonical_index(const ChannelId& id) {
    const auto& order = canonical_channels();
    for (int i = 0; i < static_cast<int>(order.size()); ++i) {
        if (order[i] == id) return i;
    }
    return -1;
}

std::string channel_name(const ChannelId& id) {
    return std::string(to_string(id.feature)) + "/" + std::string(to_string(id.side));
}

}  // namespace gaitbench
