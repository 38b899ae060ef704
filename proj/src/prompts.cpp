#include "genius/prompts.hpp"

#include <algorithm>
#include <map>

namespace genius::llm {

namespace {

constexpr DecodingParams kExtraction{0.0, 2048};
constexpr DecodingParams kGeneration{0.7, 4096};

const char* const kScaffoldSystem =
    "You are an expert in Quantum ESPRESSO pw.x. First restate the current context in your own words, "
    "then expand on it step by step using only the information provided, and finish with a reasoned conclusion.";

const char* const kExtractSystem =
    "You extract structured information. Reply with a single JSON object that has exactly the keys and types "
    "of the schema. Do not add commentary outside the JSON object.";

std::vector<PromptTemplate> build_templates() {
    std::vector<PromptTemplate> t;

    t.push_back({"interface_parse", Strategy::structured_extraction, kExtractSystem,
                 R"(Schema:
{"keywords": [string], "material_formula": string, "dimensionality": "2D" | "3D", "calculation_kind": string}

calculation_kind is one of scf, nscf, bands, relax, md, vc-relax, vc-md.

Example request: "Compute the band structure of bulk silicon with PBE."
Example reply: {"keywords": ["band structure", "PBE", "silicon"], "material_formula": "Si", "dimensionality": "3D", "calculation_kind": "bands"}

Example request: "Relax monolayer MoS2 with a 12x12x1 k-mesh."
Example reply: {"keywords": ["relax", "monolayer", "k-mesh"], "material_formula": "MoS2", "dimensionality": "2D", "calculation_kind": "relax"}

Request: "{{prompt}}"
Reply:)",
                 {{"keywords", FieldType::STRING_LIST},
                  {"material_formula", FieldType::CHARACTER},
                  {"dimensionality", FieldType::CHARACTER},
                  {"calculation_kind", FieldType::CHARACTER}},
                 kExtraction});

    t.push_back({"condition_extract", Strategy::structured_extraction, kExtractSystem,
                 R"(Schema:
{"conditions": [string]}

Select every condition that applies to the request, explicitly or implicitly, from the catalog below.
Use the condition keys verbatim. Categories: {{categories}}

Catalog:
{{conditions_catalog}}

Example request: "SCF of bulk copper"
Example reply: {"conditions": ["SCF calculation", "Metallic systems", "Bulk crystal"]}

Request: "{{prompt}}"
Reply:)",
                 {{"conditions", FieldType::STRING_LIST}},
                 kExtraction});

    t.push_back({"parameter_evaluate", Strategy::structured_extraction, kExtractSystem,
                 R"(Schema:
{"value": <value or null>, "rationale": string}

Decide the value of one pw.x parameter for the request. Reply with null when the parameter is not relevant.
The value must have the parameter's data type ({{data_type}}).

Parameter: {{parameter}} (namelist {{namelist}})
Description: {{description}}
Default: {{default}}
Allowed values: {{allowed}}
Material: {{formula}}
Calculation: {{calculation}}
Active conditions: {{conditions}}
{{feedback}}
Example reply for ecutwfc on a PAW oxide: {"value": 50.0, "rationale": "PAW oxygen needs a high cutoff."}
Example reply for an irrelevant parameter: {"value": null, "rationale": "Not used by this calculation."}

Request: "{{prompt}}"
Reply:)",
                 {{"value", FieldType::ANY}, {"rationale", FieldType::CHARACTER}},
                 kExtraction});

    t.push_back({"protocol_generate", Strategy::contextual_scaffolding, kScaffoldSystem,
                 R"(Context: a user asked for a Quantum ESPRESSO calculation and the recommendation system produced
the parameter template below together with a draft pw.x input rendered from it.

User request:
{{prompt}}

Recommended parameters:
{{template}}

Draft input:
{{draft}}

Explain the context, check the draft against the request and the recommended parameters, then return the
final pw.x input file inside one ``` fenced block.)",
                 {},
                 kGeneration});

    t.push_back({"error_keywords", Strategy::structured_extraction, kExtractSystem,
                 R"(Schema:
{"keywords": [string]}

List the pw.x parameter names, routine names and short technical phrases that identify the cause of the error.

Example error: "from cell_base_init : error # 2  ibrav=0: must read cell parameters"
Example reply: {"keywords": ["cell_base_init", "ibrav", "CELL_PARAMETERS"]}

Error:
{{error}}
Reply:)",
                 {{"keywords", FieldType::STRING_LIST}},
                 kExtraction});

    t.push_back({"error_correct", Strategy::contextual_scaffolding, kScaffoldSystem,
                 R"(## Error message
{{error}}

## Documentation
{{docs}}

## Latest protocol
{{protocol}}

## User request
{{prompt}}
)",
                 {},
                 kGeneration});

    t.push_back({"complexity_score", Strategy::structured_extraction, kExtractSystem,
                 R"(Schema:
{"named_material": bool, "named_functional": bool, "kpoint_specification": bool, "spin_or_magnetism": bool,
 "dimensionality": bool, "convergence_criteria": bool, "cell_or_space_group": bool, "multiple_tasks": bool,
 "units_given": bool, "method_constraints": bool}

Mark a feature true only when the request states it. Feature definitions:
{{features}}

Example request: "SCF of bulk Si"
Example reply: {"named_material": true, "named_functional": false, "kpoint_specification": false, "spin_or_magnetism": false, "dimensionality": true, "convergence_criteria": false, "cell_or_space_group": false, "multiple_tasks": false, "units_given": false, "method_constraints": false}

Request: "{{prompt}}"
Reply:)",
                 {{"named_material", FieldType::LOGICAL},
                  {"named_functional", FieldType::LOGICAL},
                  {"kpoint_specification", FieldType::LOGICAL},
                  {"spin_or_magnetism", FieldType::LOGICAL},
                  {"dimensionality", FieldType::LOGICAL},
                  {"convergence_criteria", FieldType::LOGICAL},
                  {"cell_or_space_group", FieldType::LOGICAL},
                  {"multiple_tasks", FieldType::LOGICAL},
                  {"units_given", FieldType::LOGICAL},
                  {"method_constraints", FieldType::LOGICAL}},
                 kExtraction});
    return t;
}

const std::vector<PromptTemplate>& templates() {
    static const std::vector<PromptTemplate> all = build_templates();
    return all;
}

}  // namespace

const std::vector<std::string>& template_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& t : templates()) out.push_back(t.id);
        return out;
    }();
    return ids;
}

const PromptTemplate& prompt_template(std::string_view id) {
    for (const auto& t : templates())
        if (t.id == id) return t;
    throw TemplateError("", "unknown template '" + std::string(id) + "'");
}

std::vector<std::string> placeholders(std::string_view body) {
    std::vector<std::string> names;
    std::size_t pos = 0;
    while ((pos = body.find("{{", pos)) != std::string_view::npos) {
        auto end = body.find("}}", pos + 2);
        if (end == std::string_view::npos) break;
        std::string name(body.substr(pos + 2, end - pos - 2));
        if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
        pos = end + 2;
    }
    return names;
}

std::string render_prompt(std::string_view template_id, const nlohmann::json& bindings) {
    const auto& tpl = prompt_template(template_id);
    std::string out;
    std::string_view body = tpl.body;
    std::size_t pos = 0;
    while (true) {
        auto open = body.find("{{", pos);
        if (open == std::string_view::npos) {
            out.append(body.substr(pos));
            break;
        }
        auto close = body.find("}}", open + 2);
        if (close == std::string_view::npos) {
            out.append(body.substr(pos));
            break;
        }
        out.append(body.substr(pos, open - pos));
        std::string name(body.substr(open + 2, close - open - 2));
        auto it = bindings.find(name);
        if (it == bindings.end())
            throw TemplateError(name, "unbound placeholder '" + name + "' in template " + std::string(template_id));
        out += it->is_string() ? it->get<std::string>() : it->dump();
        pos = close + 2;
    }
    return out;
}

}  // namespace genius::llm
