#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace gaitbench {

// The seven movement classes, canonical upper-snake spelling.
enum class ClassLabel {
    NORMAL,
    BOUNCY,
    STIFF,
    LIMB_ABDUCTION,
    CROUCHED,
    INWARD_FOOT,
    OUTWARD_FOOT,
};

inline constexpr std::array<ClassLabel, 7> kAllLabels = {
    ClassLabel::NORMAL,         ClassLabel::BOUNCY,      ClassLabel::STIFF,
    ClassLabel::LIMB_ABDUCTION, ClassLabel::CROUCHED,    ClassLabel::INWARD_FOOT,
    ClassLabel::OUTWARD_FOOT,
};

std::string_view to_string(ClassLabel label);

// Case-sensitive; anything but the canonical spelling is rejected.
std::optional<ClassLabel> parse_class_label(std::string_view text);

enum class BinaryLabel { NORMAL, NOT_NORMAL };

std::string_view to_string(BinaryLabel label);
std::optional<BinaryLabel> parse_binary_label(std::string_view text);

// NORMAL -> NORMAL, every other class -> NOT_NORMAL.
BinaryLabel project_binary(ClassLabel label);

enum class Confidence { high, medium, low };

std::string_view to_string(Confidence c);
// Case-insensitive.
std::optional<Confidence> parse_confidence(std::string_view text);

}  // namespace gaitbench
