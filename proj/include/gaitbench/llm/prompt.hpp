#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace gaitbench {

struct PromptError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shipped template texts (identical to assets/prompt_grounded.txt and
// assets/prompt_ungrounded.txt; embedded at build time).
const std::string& grounded_prompt_template();
const std::string& ungrounded_prompt_template();

// Substitutes {feature_text} and, when present in the template,
// {reference_text}. Unknown placeholders and a grounded template without a
// reference payload are errors.
std::string assemble_prompt(const std::string& trial_text,
                            const std::optional<std::string>& reference_text,
                            const std::string& template_text);

}  // namespace gaitbench
