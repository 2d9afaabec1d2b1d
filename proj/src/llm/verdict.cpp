#include "gaitbench/llm/verdict.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

namespace gaitbench {

std::string_view to_string(SchemaErrorKind kind) {
    switch (kind) {
        case SchemaErrorKind::not_json: return "not-json";
        case SchemaErrorKind::missing_field: return "missing-field";
        case SchemaErrorKind::extra_field: return "extra-field";
        case SchemaErrorKind::bad_class: return "bad-class";
        case SchemaErrorKind::bad_confidence: return "bad-confidence";
        case SchemaErrorKind::empty_justification: return "empty-justification";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Strips one leading and/or trailing ``` fence line. Returns true if
// anything was stripped.
bool strip_fence(std::string& text) {
    bool stripped = false;
    if (text.rfind("```", 0) == 0) {
        const std::size_t nl = text.find('\n');
        text = nl == std::string::npos ? "" : text.substr(nl + 1);
        stripped = true;
    }
    if (text.size() >= 3 && text.compare(text.size() - 3, 3, "```") == 0) {
        const std::size_t nl = text.rfind('\n', text.size() - 4);
        text = nl == std::string::npos ? "" : text.substr(0, nl);
        stripped = true;
    }
    return stripped;
}

}  // namespace

VerdictOrError parse_verdict(const std::string& raw) {
    std::string text = trim(raw);
    const bool fence_stripped = strip_fence(text);

    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return SchemaError{SchemaErrorKind::not_json, "response is not a JSON object"};
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "class" && key != "confidence" && key != "justification") {
            return SchemaError{SchemaErrorKind::extra_field, "unexpected key '" + key + "'"};
        }
    }
    for (const char* key : {"class", "confidence", "justification"}) {
        if (!j.contains(key)) {
            return SchemaError{SchemaErrorKind::missing_field,
                               std::string("missing key '") + key + "'"};
        }
    }

    if (!j["class"].is_string()) {
        return SchemaError{SchemaErrorKind::bad_class, "class is not a string"};
    }
    const std::string class_text = trim(j["class"].get<std::string>());
    const auto label = parse_class_label(class_text);
    if (!label) {
        return SchemaError{SchemaErrorKind::bad_class, "'" + class_text + "' is not allowed"};
    }

    if (!j["confidence"].is_string()) {
        return SchemaError{SchemaErrorKind::bad_confidence, "confidence is not a string"};
    }
    const auto confidence = parse_confidence(trim(j["confidence"].get<std::string>()));
    if (!confidence) {
        return SchemaError{SchemaErrorKind::bad_confidence,
                           "'" + j["confidence"].get<std::string>() + "' is not allowed"};
    }

    if (!j["justification"].is_string() ||
        trim(j["justification"].get<std::string>()).empty()) {
        return SchemaError{SchemaErrorKind::empty_justification, "justification is empty"};
    }

    LlmVerdict v;
    v.predicted = *label;
    v.confidence = *confidence;
    v.justification = j["justification"].get<std::string>();
    v.raw_response = raw;
    v.fence_stripped = fence_stripped;
    return v;
}

}  // namespace gaitbench
