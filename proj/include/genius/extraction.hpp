#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace genius::llm {

enum class FieldType { CHARACTER, REAL, INTEGER, LOGICAL, STRING_LIST, ANY };

std::string_view to_string(FieldType type);

struct ExpectedKey {
    std::string key;
    FieldType type = FieldType::CHARACTER;
};

struct StructuredExtraction {
    std::string schema_name;
    std::vector<ExpectedKey> expected_keys;
    std::string raw_text;
    nlohmann::json value = nlohmann::json::object();
};

enum class ExtractionErrorKind { no_json_block, parse_failure, missing_key, type_mismatch };

std::string_view to_string(ExtractionErrorKind kind);

class ExtractionError : public std::runtime_error {
public:
    ExtractionError(ExtractionErrorKind kind, std::string key, const std::string& message);
    ExtractionErrorKind kind() const { return kind_; }
    const std::string& key() const { return key_; }

private:
    ExtractionErrorKind kind_;
    std::string key_;
};

/// First balanced {...} block in `text`, string literals respected. Offsets into `text`.
std::optional<std::pair<std::size_t, std::size_t>> find_json_block(std::string_view text);

/// Coerces `value` to `type` or returns nullopt. Numeric strings become numbers,
/// "true"/"false" (and Fortran .true./.false.) become booleans.
std::optional<nlohmann::json> coerce(const nlohmann::json& value, FieldType type);

StructuredExtraction extract_structured(std::string_view raw_text, const std::vector<ExpectedKey>& expected_keys,
                                        std::string schema_name = {});

/// Body of the first ``` fenced block, or the whole text trimmed and newline-terminated when there is none.
std::string extract_fenced_block(std::string_view text);

}  // namespace genius::llm
