#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "genius/kg.hpp"

namespace genius {

/// A namelist value: LOGICAL, INTEGER, REAL or CHARACTER.
using Value = std::variant<bool, std::int64_t, double, std::string>;

kg::DataType value_type(const Value& value);

/// True when `value` may be stored in a parameter of type `type`. INTEGER literals are accepted for REAL.
bool conforms(const Value& value, kg::DataType type);

/// Shortest round-trip decimal, always with a '.' or an exponent so it reads back as REAL.
std::string format_real(double value);

/// Fortran literal: .true./.false., decimal, shortest REAL, single-quoted CHARACTER.
std::string format_value(const Value& value);

/// Reads one Fortran literal (quoted string, logical, integer, real with d/D/e/E exponent).
std::optional<Value> parse_literal(std::string_view token);

/// Converts unquoted text such as a KG default ("1.0D-4", ".true.", "bfgs") to a value of `type`.
std::optional<Value> value_from_text(std::string_view text, kg::DataType type);

/// Converts a JSON scalar to a value of `type`; COMPOSITE accepts strings and arrays of scalars.
std::optional<Value> value_from_json(const nlohmann::json& value, kg::DataType type);

nlohmann::json value_to_json(const Value& value);

}  // namespace genius
