#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genius/extraction.hpp"
#include "genius/llm.hpp"

namespace genius::llm {

enum class Strategy { contextual_scaffolding, structured_extraction };

struct PromptTemplate {
    std::string id;
    Strategy strategy;
    std::string system_prompt;
    std::string body;
    std::vector<ExpectedKey> schema;  // empty for free-text templates
    DecodingParams decoding;
};

class TemplateError : public std::invalid_argument {
public:
    TemplateError(std::string placeholder, const std::string& message)
        : std::invalid_argument(message), placeholder_(std::move(placeholder)) {}
    const std::string& placeholder() const { return placeholder_; }

private:
    std::string placeholder_;
};

const std::vector<std::string>& template_ids();
const PromptTemplate& prompt_template(std::string_view id);

/// Names of the {{placeholders}} in a template body, in order of first use.
std::vector<std::string> placeholders(std::string_view body);

/// Substitutes every {{name}} from `bindings`. Non-string bindings are dumped as JSON.
std::string render_prompt(std::string_view template_id, const nlohmann::json& bindings);

}  // namespace genius::llm
