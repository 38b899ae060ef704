#include "genius/value.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace genius {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    return text;
}

std::optional<std::int64_t> read_integer(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return out;
}

std::optional<double> read_real(std::string_view text) {
    std::string buf(text);
    for (auto& c : buf)
        if (c == 'd' || c == 'D') c = 'e';
    std::string_view view(buf);
    if (!view.empty() && view.front() == '+') view.remove_prefix(1);
    if (view.empty()) return std::nullopt;
    // from_chars would accept "inf"/"nan"; Fortran input has neither.
    if (!std::isdigit(static_cast<unsigned char>(view.front())) && view.front() != '.' && view.front() != '-')
        return std::nullopt;
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), out);
    if (ec != std::errc{} || ptr != view.data() + view.size() || !std::isfinite(out)) return std::nullopt;
    return out;
}

std::optional<bool> read_logical(std::string_view text) {
    auto t = lower(text);
    if (t == ".true." || t == ".t." || t == "true" || t == "t") return true;
    if (t == ".false." || t == ".f." || t == "false" || t == "f") return false;
    return std::nullopt;
}

}  // namespace

kg::DataType value_type(const Value& value) {
    switch (value.index()) {
        case 0: return kg::DataType::LOGICAL;
        case 1: return kg::DataType::INTEGER;
        case 2: return kg::DataType::REAL;
        default: return kg::DataType::CHARACTER;
    }
}

bool conforms(const Value& value, kg::DataType type) {
    auto actual = value_type(value);
    if (actual == type) return true;
    if (type == kg::DataType::REAL && actual == kg::DataType::INTEGER) return true;
    return type == kg::DataType::COMPOSITE && actual == kg::DataType::CHARACTER;
}

std::string format_real(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    std::string out(buf, ptr);
    if (out.find_first_of(".e") == std::string::npos && out.find("inf") == std::string::npos &&
        out.find("nan") == std::string::npos)
        out += ".0";
    return out;
}

std::string format_value(const Value& value) {
    switch (value.index()) {
        case 0: return std::get<bool>(value) ? ".true." : ".false.";
        case 1: return std::to_string(std::get<std::int64_t>(value));
        case 2: return format_real(std::get<double>(value));
        default: {
            std::string out = "'";
            for (char c : std::get<std::string>(value)) {
                if (c == '\'') out += '\'';
                out += c;
            }
            return out + "'";
        }
    }
}

std::optional<Value> parse_literal(std::string_view token) {
    token = trim(token);
    if (token.empty()) return std::nullopt;
    char q = token.front();
    if (q == '\'' || q == '"') {
        if (token.size() < 2 || token.back() != q) return std::nullopt;
        std::string out;
        for (std::size_t i = 1; i + 1 < token.size(); ++i) {
            if (token[i] == q) {
                // doubled quote is an escaped quote; a lone one ends the string early
                if (i + 2 < token.size() && token[i + 1] == q) {
                    out += q;
                    ++i;
                    continue;
                }
                return std::nullopt;
            }
            out += token[i];
        }
        return Value{out};
    }
    if (token.front() == '.') {
        if (auto b = read_logical(token)) return Value{*b};
    }
    if (auto i = read_integer(token)) return Value{*i};
    if (auto r = read_real(token)) return Value{*r};
    return std::nullopt;
}

std::optional<Value> value_from_text(std::string_view text, kg::DataType type) {
    text = trim(text);
    switch (type) {
        case kg::DataType::LOGICAL:
            if (auto b = read_logical(text)) return Value{*b};
            return std::nullopt;
        case kg::DataType::INTEGER:
            if (auto i = read_integer(text)) return Value{*i};
            return std::nullopt;
        case kg::DataType::REAL:
            if (auto r = read_real(text)) return Value{*r};
            return std::nullopt;
        case kg::DataType::CHARACTER:
        case kg::DataType::COMPOSITE:
            if (text.size() >= 2 && (text.front() == '\'' || text.front() == '"')) {
                if (auto v = parse_literal(text)) return v;
            }
            return Value{std::string(text)};
    }
    return std::nullopt;
}

std::optional<Value> value_from_json(const nlohmann::json& value, kg::DataType type) {
    switch (type) {
        case kg::DataType::LOGICAL:
            if (value.is_boolean()) return Value{value.get<bool>()};
            if (value.is_string()) return value_from_text(value.get<std::string>(), type);
            return std::nullopt;
        case kg::DataType::INTEGER:
            if (value.is_number_integer()) return Value{value.get<std::int64_t>()};
            if (value.is_number_float()) {
                double d = value.get<double>();
                if (std::isfinite(d) && std::floor(d) == d && std::fabs(d) < 9.0e15)
                    return Value{static_cast<std::int64_t>(d)};
                return std::nullopt;
            }
            if (value.is_string()) return value_from_text(value.get<std::string>(), type);
            return std::nullopt;
        case kg::DataType::REAL:
            if (value.is_number()) return Value{value.get<double>()};
            if (value.is_string()) return value_from_text(value.get<std::string>(), type);
            return std::nullopt;
        case kg::DataType::CHARACTER:
            if (value.is_string()) return Value{value.get<std::string>()};
            return std::nullopt;
        case kg::DataType::COMPOSITE:
            if (value.is_string()) return Value{value.get<std::string>()};
            if (value.is_array()) {
                std::string out;
                for (const auto& item : value) {
                    if (item.is_array() || item.is_object() || item.is_null()) return std::nullopt;
                    if (!out.empty()) out += ' ';
                    out += item.is_string() ? item.get<std::string>() : item.dump();
                }
                return Value{out};
            }
            return std::nullopt;
    }
    return std::nullopt;
}

nlohmann::json value_to_json(const Value& value) {
    return std::visit([](const auto& v) { return nlohmann::json(v); }, value);
}

}  // namespace genius
