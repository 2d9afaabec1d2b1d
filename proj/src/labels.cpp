#include "gaitbench/labels.hpp"

#include <algorithm>
#include <cctype>

namespace gaitbench {

std::string_view to_string(ClassLabel label) {
    switch (label) {
        case ClassLabel::NORMAL: return "NORMAL";
        case ClassLabel::BOUNCY: return "BOUNCY";
        case ClassLabel::STIFF: return "STIFF";
        case ClassLabel::LIMB_ABDUCTION: return "LIMB_ABDUCTION";
        case ClassLabel::CROUCHED: return "CROUCHED";
        case ClassLabel::INWARD_FOOT: return "INWARD_FOOT";
        case ClassLabel::OUTWARD_FOOT: return "OUTWARD_FOOT";
    }
    return "?";
}

std::optional<ClassLabel> parse_class_label(std::string_view text) {
    for (ClassLabel l : kAllLabels) {
        if (text == to_string(l)) return l;
    }
    return std::nullopt;
}

std::string_view to_string(BinaryLabel label) {
    return label == BinaryLabel::NORMAL ? "NORMAL" : "NOT_NORMAL";
}

std::optional<BinaryLabel> parse_binary_label(std::string_view text) {
    if (text == "NORMAL") return BinaryLabel::NORMAL;
    if (text == "NOT_NORMAL") return BinaryLabel::NOT_NORMAL;
    return std::nullopt;
}

BinaryLabel project_binary(ClassLabel label) {
    return label == ClassLabel::NORMAL ? BinaryLabel::NORMAL : BinaryLabel::NOT_NORMAL;
}

std::string_view to_string(Confidence c) {
    switch (c) {
        case Confidence::high: return "high";
        case Confidence::medium: return "medium";
        case Confidence::low: return "low";
    }
    return "?";
}

std::optional<Confidence> parse_confidence(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "high") return Confidence::high;
    if (lower == "medium") return Confidence::medium;
    if (lower == "low") return Confidence::low;
    return std::nullopt;
}

}  // namespace gaitbench
