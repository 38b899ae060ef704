#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genius/kg.hpp"
#include "genius/value.hpp"

namespace genius {

enum class Dimensionality { two_d, three_d };

std::string_view to_string(Dimensionality dim);
/// Accepts "two_d"/"three_d" and the prompt spellings "2D"/"3D" (any case).
std::optional<Dimensionality> parse_dimensionality(std::string_view text);

struct ParsedRequest {
    std::string raw_prompt;
    std::vector<std::string> keywords;
    std::vector<std::string> condition_keys;
    std::string material_formula;
    Dimensionality dimensionality = Dimensionality::three_d;
    std::string calculation_kind = "scf";

    bool operator==(const ParsedRequest&) const = default;
    nlohmann::json to_json() const;
    static ParsedRequest from_json(const nlohmann::json& j);
};

struct EvaluatedParameter {
    std::string node_name;
    std::optional<Value> value;  // nullopt is NONE
    kg::DataType data_type = kg::DataType::CHARACTER;
    std::string rationale;
    // Owning namelist, or empty for a card.
    std::string section;

    bool operator==(const EvaluatedParameter&) const = default;
    nlohmann::json to_json() const;
    static EvaluatedParameter from_json(const nlohmann::json& j);
};

struct ProtocolTemplate {
    std::vector<EvaluatedParameter> parameters;
    std::string structure_ref;
    std::map<std::string, std::string> pseudopotential_hints;
    std::vector<std::string> conditions;

    const EvaluatedParameter* find(std::string_view name) const;
    /// Value of CONTROL.calculation, "scf" when absent.
    std::string calculation() const;

    bool operator==(const ProtocolTemplate&) const = default;
    nlohmann::json to_json() const;
    static ProtocolTemplate from_json(const nlohmann::json& j);
};

class TemplateInvariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws TemplateInvariantError on duplicate names, unknown nodes, NONE values or type mismatches.
void check_template(const ProtocolTemplate& tmpl, const kg::KnowledgeGraph& graph);

enum class ComplexityLabel { basic, standard, complex };

std::string_view to_string(ComplexityLabel label);
std::optional<ComplexityLabel> parse_complexity_label(std::string_view text);
ComplexityLabel label_for_score(int score);

struct ComplexityScore {
    std::vector<bool> features_present;  // ten entries, rubric order
    int score = 0;
    ComplexityLabel label = ComplexityLabel::basic;
    bool fallback = false;  // scorer failed; label defaulted to standard

    nlohmann::json to_json() const;
};

}  // namespace genius
