#include "genius/request.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace genius {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

std::string_view to_string(Dimensionality dim) { return dim == Dimensionality::two_d ? "two_d" : "three_d"; }

std::optional<Dimensionality> parse_dimensionality(std::string_view text) {
    auto t = lower(text);
    if (t == "two_d" || t == "2d") return Dimensionality::two_d;
    if (t == "three_d" || t == "3d") return Dimensionality::three_d;
    return std::nullopt;
}

nlohmann::json ParsedRequest::to_json() const {
    return {{"raw_prompt", raw_prompt},
            {"keywords", keywords},
            {"condition_keys", condition_keys},
            {"material_formula", material_formula},
            {"dimensionality", to_string(dimensionality)},
            {"calculation_kind", calculation_kind}};
}

ParsedRequest ParsedRequest::from_json(const nlohmann::json& j) {
    ParsedRequest r;
    r.raw_prompt = j.value("raw_prompt", "");
    r.keywords = j.value("keywords", std::vector<std::string>{});
    r.condition_keys = j.value("condition_keys", std::vector<std::string>{});
    r.material_formula = j.at("material_formula").get<std::string>();
    auto dim = parse_dimensionality(j.value("dimensionality", "three_d"));
    if (!dim) throw std::invalid_argument("bad dimensionality");
    r.dimensionality = *dim;
    r.calculation_kind = j.value("calculation_kind", "scf");
    return r;
}

nlohmann::json EvaluatedParameter::to_json() const {
    nlohmann::json j = {{"node_name", node_name},
                        {"data_type", kg::to_string(data_type)},
                        {"rationale", rationale},
                        {"section", section}};
    j["value"] = value ? value_to_json(*value) : nlohmann::json(nullptr);
    return j;
}

EvaluatedParameter EvaluatedParameter::from_json(const nlohmann::json& j) {
    EvaluatedParameter p;
    p.node_name = j.at("node_name").get<std::string>();
    auto type = kg::parse_data_type(j.at("data_type").get<std::string>());
    if (!type) throw std::invalid_argument("bad data_type for " + p.node_name);
    p.data_type = *type;
    p.rationale = j.value("rationale", "");
    p.section = j.value("section", "");
    const auto& v = j.contains("value") ? j["value"] : nlohmann::json(nullptr);
    if (!v.is_null()) {
        p.value = value_from_json(v, p.data_type);
        if (!p.value) throw std::invalid_argument("value does not match data_type for " + p.node_name);
    }
    return p;
}

const EvaluatedParameter* ProtocolTemplate::find(std::string_view name) const {
    for (const auto& p : parameters)
        if (p.node_name == name) return &p;
    return nullptr;
}

std::string ProtocolTemplate::calculation() const {
    const auto* p = find("calculation");
    if (p && p->value && std::holds_alternative<std::string>(*p->value)) return std::get<std::string>(*p->value);
    return "scf";
}

nlohmann::json ProtocolTemplate::to_json() const {
    nlohmann::json params = nlohmann::json::array();
    for (const auto& p : parameters) params.push_back(p.to_json());
    return {{"parameters", params},
            {"structure_ref", structure_ref},
            {"pseudopotential_hints", pseudopotential_hints},
            {"conditions", conditions}};
}

ProtocolTemplate ProtocolTemplate::from_json(const nlohmann::json& j) {
    ProtocolTemplate t;
    for (const auto& p : j.at("parameters")) t.parameters.push_back(EvaluatedParameter::from_json(p));
    t.structure_ref = j.value("structure_ref", "");
    t.pseudopotential_hints = j.value("pseudopotential_hints", std::map<std::string, std::string>{});
    t.conditions = j.value("conditions", std::vector<std::string>{});
    return t;
}

void check_template(const ProtocolTemplate& tmpl, const kg::KnowledgeGraph& graph) {
    std::set<std::string> seen;
    for (const auto& p : tmpl.parameters) {
        if (!seen.insert(p.node_name).second) throw TemplateInvariantError("duplicate parameter " + p.node_name);
        const auto* node = graph.find(p.node_name);
        if (!node) throw TemplateInvariantError("parameter not in knowledge graph: " + p.node_name);
        if (!p.value) throw TemplateInvariantError("NONE value kept in template: " + p.node_name);
        if (node->data_type != p.data_type || !conforms(*p.value, p.data_type))
            throw TemplateInvariantError("type mismatch for " + p.node_name);
    }
}

std::string_view to_string(ComplexityLabel label) {
    switch (label) {
        case ComplexityLabel::basic: return "basic";
        case ComplexityLabel::standard: return "standard";
        case ComplexityLabel::complex: return "complex";
    }
    return "standard";
}

std::optional<ComplexityLabel> parse_complexity_label(std::string_view text) {
    if (text == "basic") return ComplexityLabel::basic;
    if (text == "standard") return ComplexityLabel::standard;
    if (text == "complex") return ComplexityLabel::complex;
    return std::nullopt;
}

ComplexityLabel label_for_score(int score) {
    if (score <= 4) return ComplexityLabel::basic;
    if (score <= 8) return ComplexityLabel::standard;
    return ComplexityLabel::complex;
}

nlohmann::json ComplexityScore::to_json() const {
    return {{"features_present", features_present},
            {"score", score},
            {"label", to_string(label)},
            {"fallback", fallback}};
}

}  // namespace genius
