#include "gaitbench/llm/prompt.hpp"

#include <cctype>
#include <sstream>

namespace gaitbench {

std::string assemble_prompt(const std::string& trial_text,
                            const std::optional<std::string>& reference_text,
                            const std::string& template_text) {
    std::ostringstream out;
    bool saw_feature = false;
    std::size_t pos = 0;
    while (pos < template_text.size()) {
        const std::size_t open = template_text.find('{', pos);
        if (open == std::string::npos) {
            out << template_text.substr(pos);
            break;
        }
        // Placeholder tokens are {lower_snake}; anything else (e.g. the JSON
        // schema block) is literal text.
        std::size_t end = open + 1;
        while (end < template_text.size() &&
               (std::islower(static_cast<unsigned char>(template_text[end])) ||
                template_text[end] == '_')) {
            ++end;
        }
        if (end > open + 1 && end < template_text.size() && template_text[end] == '}') {
            const std::string name = template_text.substr(open + 1, end - open - 1);
            out << template_text.substr(pos, open - pos);
            if (name == "feature_text") {
                out << trial_text;
                saw_feature = true;
            } else if (name == "reference_text") {
                if (!reference_text)
                    throw PromptError("template requires {reference_text} but none was given");
                out << *reference_text;
            } else {
                throw PromptError("unknown placeholder {" + name + "}");
            }
            pos = end + 1;
        } else {
            out << template_text.substr(pos, open + 1 - pos);
            pos = open + 1;
        }
    }
    if (!saw_feature) throw PromptError("template is missing {feature_text}");
    return out.str();
}

}  // namespace gaitbench
