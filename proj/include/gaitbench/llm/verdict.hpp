#pragma once

#include <string>
#include <variant>

#include "gaitbench/labels.hpp"

namespace gaitbench {

struct LlmVerdict {
    ClassLabel predicted = ClassLabel::NORMAL;
    Confidence confidence = Confidence::low;
    std::string justification;
    int attempts = 1;
    std::string raw_response;
    bool fence_stripped = false;
};

enum class SchemaErrorKind {
    not_json,
    missing_field,
    extra_field,
    bad_class,
    bad_confidence,
    empty_justification,
};

std::string_view to_string(SchemaErrorKind kind);

struct SchemaError {
    SchemaErrorKind kind;
    std::string detail;
};

using VerdictOrError = std::variant<LlmVerdict, SchemaError>;

// Strict parse of the required {"class","confidence","justification"} object.
// Exactly those keys; class must match an allowed label after whitespace
// trimming; confidence is case-insensitive. A single surrounding markdown
// code fence is stripped and flagged.
VerdictOrError parse_verdict(const std::string& raw);

}  // namespace gaitbench
