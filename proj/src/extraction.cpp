#include "genius/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace genius::llm {

using nlohmann::json;

namespace {

std::string lower_trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::optional<long long> parse_integer(const std::string& s) {
    long long v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
    return v;
}

std::optional<double> parse_real(std::string s) {
    std::replace_if(s.begin(), s.end(), [](char c) { return c == 'd' || c == 'D'; }, 'e');
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

std::string_view to_string(FieldType type) {
    switch (type) {
        case FieldType::CHARACTER: return "CHARACTER";
        case FieldType::REAL: return "REAL";
        case FieldType::INTEGER: return "INTEGER";
        case FieldType::LOGICAL: return "LOGICAL";
        case FieldType::STRING_LIST: return "STRING_LIST";
        case FieldType::ANY: return "ANY";
    }
    return "ANY";
}

std::string_view to_string(ExtractionErrorKind kind) {
    switch (kind) {
        case ExtractionErrorKind::no_json_block: return "no_json_block";
        case ExtractionErrorKind::parse_failure: return "parse_failure";
        case ExtractionErrorKind::missing_key: return "missing_key";
        case ExtractionErrorKind::type_mismatch: return "type_mismatch";
    }
    return "parse_failure";
}

ExtractionError::ExtractionError(ExtractionErrorKind kind, std::string key, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), key_(std::move(key)) {}

std::optional<std::pair<std::size_t, std::size_t>> find_json_block(std::string_view text) {
    auto start = text.find('{');
    while (start != std::string_view::npos) {
        int depth = 0;
        bool in_string = false;
        bool escaped = false;
        for (std::size_t i = start; i < text.size(); ++i) {
            char c = text[i];
            if (in_string) {
                if (escaped) escaped = false;
                else if (c == '\\') escaped = true;
                else if (c == '"') in_string = false;
                continue;
            }
            if (c == '"') in_string = true;
            else if (c == '{') ++depth;
            else if (c == '}' && --depth == 0) return std::make_pair(start, i + 1);
        }
        // Unbalanced from this brace; try the next one.
        start = text.find('{', start + 1);
    }
    return std::nullopt;
}

std::optional<json> coerce(const json& value, FieldType type) {
    switch (type) {
        case FieldType::ANY:
            return value;
        case FieldType::CHARACTER:
            if (value.is_string()) return value;
            return std::nullopt;
        case FieldType::INTEGER:
            if (value.is_number_integer()) return value;
            if (value.is_number_float()) {
                double d = value.get<double>();
                if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9.0e15) return json(static_cast<long long>(d));
                return std::nullopt;
            }
            if (value.is_string()) {
                auto s = lower_trim(value.get<std::string>());
                if (auto v = parse_integer(s)) return json(*v);
            }
            return std::nullopt;
        case FieldType::REAL:
            if (value.is_number()) return json(value.get<double>());
            if (value.is_string()) {
                if (auto v = parse_real(lower_trim(value.get<std::string>()))) return json(*v);
            }
            return std::nullopt;
        case FieldType::LOGICAL:
            if (value.is_boolean()) return value;
            if (value.is_string()) {
                auto s = lower_trim(value.get<std::string>());
                if (s == "true" || s == ".true." || s == ".t.") return json(true);
                if (s == "false" || s == ".false." || s == ".f.") return json(false);
            }
            return std::nullopt;
        case FieldType::STRING_LIST:
            if (!value.is_array()) return std::nullopt;
            for (const auto& item : value)
                if (!item.is_string()) return std::nullopt;
            return value;
    }
    return std::nullopt;
}

StructuredExtraction extract_structured(std::string_view raw_text, const std::vector<ExpectedKey>& expected_keys,
                                        std::string schema_name) {
    if (expected_keys.empty()) throw std::invalid_argument("extract_structured needs at least one expected key");
    StructuredExtraction out;
    out.schema_name = std::move(schema_name);
    out.expected_keys = expected_keys;
    out.raw_text = std::string(raw_text);

    auto block = find_json_block(raw_text);
    if (!block) throw ExtractionError(ExtractionErrorKind::no_json_block, "", "no {...} block in response");

    json parsed;
    try {
        parsed = json::parse(raw_text.substr(block->first, block->second - block->first));
    } catch (const json::parse_error& e) {
        throw ExtractionError(ExtractionErrorKind::parse_failure, "", e.what());
    }
    if (!parsed.is_object()) throw ExtractionError(ExtractionErrorKind::parse_failure, "", "block is not an object");

    for (const auto& expected : expected_keys) {
        auto it = parsed.find(expected.key);
        if (it == parsed.end())
            throw ExtractionError(ExtractionErrorKind::missing_key, expected.key, "missing key '" + expected.key + "'");
        auto coerced = coerce(*it, expected.type);
        if (!coerced)
            throw ExtractionError(ExtractionErrorKind::type_mismatch, expected.key,
                                  "key '" + expected.key + "' is not " + std::string(to_string(expected.type)) +
                                      ": " + it->dump());
        out.value[expected.key] = std::move(*coerced);
    }
    return out;
}

std::string extract_fenced_block(std::string_view text) {
    auto open = text.find("```");
    if (open != std::string_view::npos) {
        auto line_end = text.find('\n', open);
        if (line_end != std::string_view::npos) {
            auto close = text.find("```", line_end + 1);
            if (close != std::string_view::npos) return std::string(text.substr(line_end + 1, close - line_end - 1));
        }
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    std::string out(text);
    if (!out.empty()) out.push_back('\n');
    return out;
}

}  // namespace genius::llm
