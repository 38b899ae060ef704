#include "genius/interface.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <regex>
#include <set>
#include <thread>

#include "genius/elements.hpp"
#include "genius/prompts.hpp"

namespace genius::interface {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += sep;
        out += s;
    }
    return out;
}

llm::StructuredExtraction run_extraction(llm::Gateway& gateway, const llm::ModelRef& model, const std::string& id,
                                         const nlohmann::json& bindings) {
    auto exchange = gateway.run_template(model, id, bindings);
    return llm::extract_structured(exchange.response_text, llm::prompt_template(id).schema, id);
}

bool is_none(const nlohmann::json& v) {
    if (v.is_null()) return true;
    if (v.is_string()) {
        auto t = lower(v.get<std::string>());
        return t == "none" || t == "null";
    }
    return false;
}

}  // namespace

ParsedRequest parse_fields(const std::string& prompt, llm::Gateway& gateway, const llm::ModelRef& model) {
    if (prompt.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseFailure("calculation prompt is empty");
    llm::StructuredExtraction ex;
    try {
        ex = run_extraction(gateway, model, "interface_parse", {{"prompt", prompt}});
    } catch (const llm::ExtractionError& e) {
        throw ParseFailure(std::string("could not parse the request: ") + e.what());
    }
    ParsedRequest r;
    r.raw_prompt = prompt;
    r.keywords = ex.value.at("keywords").get<std::vector<std::string>>();
    r.material_formula = ex.value.at("material_formula").get<std::string>();
    if (r.material_formula.empty()) throw ParseFailure("no material named in the request");
    try {
        materials::parse_formula(r.material_formula);
    } catch (const materials::FormulaError& e) {
        throw ParseFailure(e.what());
    }
    auto dim = parse_dimensionality(ex.value.at("dimensionality").get<std::string>());
    if (!dim) throw ParseFailure("dimensionality must be 2D or 3D");
    r.dimensionality = *dim;
    r.calculation_kind = lower(ex.value.at("calculation_kind").get<std::string>());
    if (std::find(std::begin(kCalculationKinds), std::end(kCalculationKinds), r.calculation_kind) ==
        std::end(kCalculationKinds))
        throw ParseFailure("unsupported calculation kind '" + r.calculation_kind + "'");
    return r;
}

std::vector<std::string> implicit_conditions(const ParsedRequest& request, const kg::KnowledgeGraph& graph) {
    std::vector<std::string> out;
    auto add = [&](const std::string& key) {
        if (graph.has_condition(key) && std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
    };
    try {
        auto parts = materials::parse_formula(request.material_formula);
        if (parts.size() == 1) {
            const auto* el = find_element(parts.front().element);
            if (el && el->metal) add("Metallic systems");
        }
    } catch (const materials::FormulaError&) {
    }
    if (request.dimensionality == Dimensionality::two_d) add("Two-dimensional material");
    const std::string& kind = request.calculation_kind;
    if (kind == "scf") add("SCF calculation");
    if (kind == "nscf") add("Non-self-consistent calculation");
    if (kind == "bands") add("Band structure calculation");
    if (kind == "relax") add("Structural relaxation");
    if (kind == "vc-relax") add("Variable-cell relaxation");
    if (kind == "md") add("Molecular dynamics");
    if (kind == "vc-md") add("Variable-cell molecular dynamics");
    return out;
}

std::vector<std::string> extract_conditions(const ParsedRequest& request, const kg::KnowledgeGraph& graph,
                                            llm::Gateway& gateway, const llm::ModelRef& model) {
    std::vector<std::string> categories;
    std::string catalog;
    for (auto cat : kg::all_categories()) {
        categories.emplace_back(kg::to_string(cat));
        std::vector<std::string> keys;
        for (const auto& c : graph.condition_keys())
            if (c.category == cat) keys.push_back(c.key);
        catalog += std::string(kg::to_string(cat)) + ": " + join(keys, "; ") + "\n";
    }
    llm::StructuredExtraction ex;
    try {
        ex = run_extraction(gateway, model, "condition_extract",
                            {{"categories", join(categories, ", ")},
                             {"conditions_catalog", catalog},
                             {"prompt", request.raw_prompt}});
    } catch (const llm::ExtractionError& e) {
        throw ParseFailure(std::string("could not extract conditions: ") + e.what());
    }
    std::vector<std::string> out;
    for (const auto& key : ex.value.at("conditions").get<std::vector<std::string>>())
        if (graph.has_condition(key) && std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
    for (const auto& key : implicit_conditions(request, graph))
        if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
    return out;
}

ParsedRequest parse_prompt(const std::string& prompt, const kg::KnowledgeGraph& graph, llm::Gateway& gateway,
                           const llm::ModelRef& model) {
    auto request = parse_fields(prompt, gateway, model);
    request.condition_keys = extract_conditions(request, graph, gateway, model);
    return request;
}

bool is_structure_bound(std::string_view name) {
    static const std::set<std::string, std::less<>> bound = {
        "ibrav", "nat",   "ntyp",  "celldm", "A", "B", "C", "cosAB", "cosAC", "cosBC", "ATOMIC_SPECIES",
        "ATOMIC_POSITIONS", "CELL_PARAMETERS"};
    return bound.count(name) > 0;
}

namespace {

EvaluatedParameter evaluate_one(const kg::KgNode& node, const ParsedRequest& request, llm::Gateway& gateway,
                                const llm::ModelRef& model) {
    nlohmann::json bindings = {
        {"data_type", kg::to_string(node.data_type)},
        {"parameter", node.name},
        {"namelist", node.namelist.value_or("card")},
        {"description", node.description},
        {"default", node.default_value.value_or("none")},
        {"allowed", node.allowed_values ? join(*node.allowed_values, ", ") : std::string("any")},
        {"formula", request.material_formula},
        {"calculation", request.calculation_kind},
        {"conditions", join(request.condition_keys, "; ")},
        {"feedback", ""},
        {"prompt", request.raw_prompt},
    };
    EvaluatedParameter out;
    out.node_name = node.name;
    out.data_type = node.data_type;
    out.section = node.namelist.value_or("");

    for (int attempt = 0; attempt < 2; ++attempt) {
        std::string problem;
        try {
            auto ex = run_extraction(gateway, model, "parameter_evaluate", bindings);
            out.rationale = ex.value.at("rationale").get<std::string>();
            const auto& v = ex.value.at("value");
            if (is_none(v)) {
                out.value.reset();
                break;
            }
            out.value = value_from_json(v, node.data_type);
            if (out.value) break;
            problem = "Your previous value " + v.dump() + " is not a valid " +
                      std::string(kg::to_string(node.data_type)) + " value.";
        } catch (const llm::ExtractionError& e) {
            problem = std::string("Your previous reply could not be read: ") + e.what() + ".";
        }
        if (attempt == 1) throw EvaluationError(node.name, "evaluation of " + node.name + " failed twice: " + problem);
        bindings["feedback"] = "Feedback: " + problem + " Reply again following the schema.";
    }

    if (!out.value && node.required) {
        std::optional<Value> fallback;
        if (node.default_value) fallback = value_from_text(*node.default_value, node.data_type);
        if (!fallback)
            throw EvaluationError(node.name, "required parameter " + node.name + " has no value and no usable default");
        out.value = fallback;
        out.rationale = "required; default used";
    }
    return out;
}

}  // namespace

ProtocolTemplate evaluate_parameters(const retrieval::CandidateSet& candidates, const ParsedRequest& request,
                                     const kg::KnowledgeGraph& graph, llm::Gateway& gateway,
                                     const llm::ModelRef& model, const materials::Structure* structure) {
    std::vector<const kg::KgNode*> todo;
    for (const auto& name : candidates.final) {
        if (is_structure_bound(name)) continue;
        const auto* node = graph.find(name);
        if (!node) throw EvaluationError(name, "candidate not in knowledge graph: " + name);
        todo.push_back(node);
    }

    std::vector<std::optional<EvaluatedParameter>> results(todo.size());
    std::vector<std::exception_ptr> errors(todo.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < todo.size();) {
            try {
                results[i] = evaluate_one(*todo[i], request, gateway, model);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::size_t n_threads = std::min<std::size_t>(8, std::max<std::size_t>(1, todo.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    ProtocolTemplate tmpl;
    for (auto& r : results)
        if (r && r->value) tmpl.parameters.push_back(std::move(*r));
    std::sort(tmpl.parameters.begin(), tmpl.parameters.end(),
              [](const EvaluatedParameter& a, const EvaluatedParameter& b) { return a.node_name < b.node_name; });
    tmpl.structure_ref = request.material_formula + "_" + std::string(to_string(request.dimensionality));
    tmpl.conditions = request.condition_keys;
    if (structure) tmpl.pseudopotential_hints = structure->pseudopotentials;
    return tmpl;
}

const std::vector<std::string>& complexity_features() {
    static const std::vector<std::string> features = {
        "named_material",     "named_functional",     "kpoint_specification", "spin_or_magnetism",
        "dimensionality",     "convergence_criteria", "cell_or_space_group",  "multiple_tasks",
        "units_given",        "method_constraints"};
    return features;
}

namespace {

const std::vector<std::string>& feature_definitions() {
    static const std::vector<std::string> defs = {
        "named_material: a specific chemical formula or material name",
        "named_functional: an exchange-correlation functional (LDA, PBE, B3LYP, HSE, ...)",
        "kpoint_specification: a k-point mesh, grid or path",
        "spin_or_magnetism: spin polarization, magnetic order or spin-orbit coupling",
        "dimensionality: 2D/3D, monolayer, bulk, slab or similar",
        "convergence_criteria: thresholds, cutoffs or convergence targets",
        "cell_or_space_group: lattice constants, cell shape or a space group",
        "multiple_tasks: more than one calculation step",
        "units_given: any numeric quantity with a unit",
        "method_constraints: smearing, Hubbard U, dispersion, exact-exchange fraction, optimizer or similar"};
    return defs;
}

bool any_of_words(const std::string& text, std::initializer_list<std::string_view> words) {
    return std::any_of(words.begin(), words.end(), [&](std::string_view w) { return text.find(w) != std::string::npos; });
}

}  // namespace

std::vector<bool> rule_based_features(std::string_view prompt) {
    const std::string t = lower(prompt);
    std::vector<bool> f(kComplexityFeatureCount, false);

    static const std::regex formula_token(R"(\b([A-Z][a-z]?\d*){1,6}\b)");
    const std::string raw(prompt);
    for (std::sregex_iterator it(raw.begin(), raw.end(), formula_token), end; it != end && !f[0]; ++it) {
        const std::string tok = it->str();
        if (tok.size() < 1) continue;
        try {
            auto parts = materials::parse_formula(tok);
            // single capital letters such as "A" or "I" are usually words, not materials
            f[0] = tok.size() > 1 || parts.size() > 1;
        } catch (const materials::FormulaError&) {
        }
    }
    f[1] = any_of_words(t, {"pbe", "lda", "b3lyp", "hse", "pbesol", "scan", "gga", "hybrid functional", "functional"});
    static const std::regex mesh(R"(\d+\s*(x|×)\s*\d+\s*(x|×)\s*\d+)");
    f[2] = any_of_words(t, {"k-point", "kpoint", "k point", "k-mesh", "k mesh", "monkhorst", "gamma point"}) ||
           std::regex_search(t, mesh);
    f[3] = any_of_words(t, {"spin", "magnet", "ferro", "collinear"});
    f[4] = any_of_words(t, {"2d", "3d", "monolayer", "bulk", "slab", "two-dimensional", "bilayer", "surface"});
    f[5] = any_of_words(t, {"converge", "threshold", "conv_thr", "tolerance", "cutoff", "ecut"});
    f[6] = any_of_words(t, {"space group", "lattice", "cell", "p21", "fcc", "bcc", "hcp", "wurtzite", "rocksalt"});
    f[7] = any_of_words(t, {" then ", "followed by", "afterwards", "and then"});
    static const std::regex unit(R"(\d\s*(ry|ev|mev|angstrom|å|bohr|kbar|gpa|k\b|%|a\.u\.))");
    f[8] = std::regex_search(t, unit);
    f[9] = any_of_words(t, {"smearing", "dft+u", "hubbard", "vdw", "dispersion", "grimme", "spin-orbit", "exact exchange",
                            "exact-exchange", "bfgs", "fire", "tetrahedra", "damp"});
    return f;
}

ComplexityScore score_from_features(const std::vector<bool>& features) {
    if (features.size() != kComplexityFeatureCount) throw std::invalid_argument("complexity rubric has ten features");
    ComplexityScore s;
    s.features_present = features;
    s.score = static_cast<int>(std::count(features.begin(), features.end(), true));
    s.label = label_for_score(s.score);
    return s;
}

ComplexityScore score_complexity(const std::string& prompt, llm::Gateway& gateway, const llm::ModelRef& model) {
    if (prompt.find_first_not_of(" \t\r\n") == std::string::npos) throw std::invalid_argument("prompt is empty");
    try {
        auto ex = run_extraction(gateway, model, "complexity_score",
                                 {{"features", join(feature_definitions(), "\n")}, {"prompt", prompt}});
        std::vector<bool> features;
        for (const auto& name : complexity_features()) features.push_back(ex.value.at(name).get<bool>());
        return score_from_features(features);
    } catch (const std::exception&) {
        auto s = score_from_features(rule_based_features(prompt));
        s.label = ComplexityLabel::standard;
        s.fallback = true;
        return s;
    }
}

}  // namespace genius::interface
