#include "genius/kg.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <utility>

namespace genius::kg {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ConditionCategory, std::string_view>, kConditionCategoryCount> kCategoryNames{{
    {ConditionCategory::calculation_type, "calculation_type"},
    {ConditionCategory::functional_and_method, "functional_and_method"},
    {ConditionCategory::cell_and_material_properties, "cell_and_material_properties"},
    {ConditionCategory::pseudopotential, "pseudopotential"},
    {ConditionCategory::magnetism_and_spin, "magnetism_and_spin"},
    {ConditionCategory::isolated_systems, "isolated_systems"},
    {ConditionCategory::kpoint_settings, "kpoint_settings"},
    {ConditionCategory::electric_field, "electric_field"},
    {ConditionCategory::occupation_types, "occupation_types"},
}};

const std::set<std::string>& empty_set() {
    static const std::set<std::string> empty;
    return empty;
}

const std::set<std::string_view> kKnownNodeFields{
    "name", "kind", "namelist", "description", "data_type", "default_value",
    "allowed_values", "connections", "conditions", "required"};

std::string require_string(const json& record, const std::string& node, const char* field) {
    auto it = record.find(field);
    if (it == record.end()) throw LoadError(node, field, "missing field");
    if (!it->is_string()) throw LoadError(node, field, "expected a string");
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& record, const std::string& node, const char* field) {
    auto it = record.find(field);
    if (it == record.end()) return std::nullopt;
    if (!it->is_string()) throw LoadError(node, field, "expected a string (absent optionals are omitted, never null)");
    return it->get<std::string>();
}

std::vector<std::string> string_list(const json& record, const std::string& node, const char* field, bool required) {
    auto it = record.find(field);
    if (it == record.end()) {
        if (required) throw LoadError(node, field, "missing field");
        return {};
    }
    if (!it->is_array()) throw LoadError(node, field, "expected a list of strings");
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string()) throw LoadError(node, field, "expected a list of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

KgNode parse_node(const json& record, std::size_t position) {
    if (!record.is_object()) throw LoadError("#" + std::to_string(position), "", "node record must be an object");
    auto name_it = record.find("name");
    if (name_it == record.end() || !name_it->is_string() || name_it->get<std::string>().empty())
        throw LoadError("#" + std::to_string(position), "name", "missing or empty name");

    KgNode node;
    node.name = name_it->get<std::string>();
    const std::string& n = node.name;

    auto kind = require_string(record, n, "kind");
    if (kind == "namelist_parameter") node.kind = NodeKind::namelist_parameter;
    else if (kind == "card") node.kind = NodeKind::card;
    else throw LoadError(n, "kind", "unknown kind '" + kind + "'");

    node.namelist = optional_string(record, n, "namelist");
    node.description = require_string(record, n, "description");
    auto type_text = require_string(record, n, "data_type");
    auto type = parse_data_type(type_text);
    if (!type) throw LoadError(n, "data_type", "unknown data type '" + type_text + "'");
    node.data_type = *type;
    if (node.kind == NodeKind::card && node.data_type != DataType::COMPOSITE)
        throw LoadError(n, "data_type", "card nodes must be COMPOSITE");
    if (node.kind == NodeKind::namelist_parameter && node.data_type == DataType::COMPOSITE)
        throw LoadError(n, "data_type", "namelist parameters cannot be COMPOSITE");

    node.default_value = optional_string(record, n, "default_value");
    if (record.contains("allowed_values")) node.allowed_values = string_list(record, n, "allowed_values", true);
    node.connections = string_list(record, n, "connections", false);
    node.conditions = string_list(record, n, "conditions", false);

    if (auto it = record.find("required"); it != record.end()) {
        if (!it->is_boolean()) throw LoadError(n, "required", "expected a boolean");
        node.required = it->get<bool>();
    }

    for (const auto& [key, value] : record.items()) {
        if (!kKnownNodeFields.contains(key)) node.extra[key] = value;
    }
    return node;
}

}  // namespace

std::string_view to_string(NodeKind kind) {
    return kind == NodeKind::card ? "card" : "namelist_parameter";
}

std::string_view to_string(DataType type) {
    switch (type) {
        case DataType::CHARACTER: return "CHARACTER";
        case DataType::REAL: return "REAL";
        case DataType::INTEGER: return "INTEGER";
        case DataType::LOGICAL: return "LOGICAL";
        case DataType::COMPOSITE: return "COMPOSITE";
    }
    return "CHARACTER";
}

std::string_view to_string(ConditionCategory category) {
    for (const auto& [c, name] : kCategoryNames)
        if (c == category) return name;
    return "";
}

std::optional<DataType> parse_data_type(std::string_view text) {
    for (auto t : {DataType::CHARACTER, DataType::REAL, DataType::INTEGER, DataType::LOGICAL, DataType::COMPOSITE})
        if (to_string(t) == text) return t;
    return std::nullopt;
}

std::optional<ConditionCategory> parse_category(std::string_view text) {
    for (const auto& [c, name] : kCategoryNames)
        if (name == text) return c;
    return std::nullopt;
}

const std::vector<ConditionCategory>& all_categories() {
    static const std::vector<ConditionCategory> all = [] {
        std::vector<ConditionCategory> out;
        for (const auto& [c, name] : kCategoryNames) out.push_back(c);
        return out;
    }();
    return all;
}

LoadError::LoadError(std::string node, std::string field, const std::string& message)
    : std::runtime_error("KG load error at node '" + node + "'" + (field.empty() ? "" : " field '" + field + "'") + ": " + message),
      node_(std::move(node)),
      field_(std::move(field)) {}

ReferentialIntegrityError::ReferentialIntegrityError(std::string node, std::string missing)
    : LoadError(node, "connections", "connection to unknown node '" + missing + "'"), missing_(std::move(missing)) {}

KnowledgeGraph KnowledgeGraph::load(std::string_view document) {
    json parsed;
    try {
        parsed = json::parse(document);
    } catch (const json::parse_error& e) {
        throw LoadError("<document>", "", std::string("invalid JSON: ") + e.what());
    }
    return load(parsed);
}

KnowledgeGraph KnowledgeGraph::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("<document>", "", "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    return load(std::string_view(text));
}

KnowledgeGraph KnowledgeGraph::load(const json& document) {
    if (!document.is_object()) throw LoadError("<document>", "", "top level must be an object");
    KnowledgeGraph graph;

    const auto& manifest = document.value("manifest", json::object());
    if (!manifest.is_object()) throw LoadError("<manifest>", "", "manifest must be an object");
    auto count_field = [&](const char* field) -> std::size_t {
        auto it = manifest.find(field);
        if (it == manifest.end()) return 0;
        if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
            throw LoadError("<manifest>", field, "expected a non-negative integer");
        return it->get<std::size_t>();
    };
    graph.manifest_.node_count = count_field("node_count");
    graph.manifest_.edge_count = count_field("edge_count");
    graph.manifest_.condition_count = count_field("condition_count");
    graph.manifest_.version = manifest.value("version", std::string{});

    // Condition keys first so node records can be checked against them.
    if (auto it = document.find("conditions"); it != document.end()) {
        if (!it->is_array()) throw LoadError("<conditions>", "", "expected a list");
        for (const auto& entry : *it) {
            if (!entry.is_object() || !entry.contains("key") || !entry["key"].is_string())
                throw LoadError("<conditions>", "key", "condition entries need a string key");
            auto key = entry["key"].get<std::string>();
            auto category_text = entry.value("category", std::string{});
            auto category = parse_category(category_text);
            if (!category) throw LoadError("<condition " + key + ">", "category", "unknown category '" + category_text + "'");
            if (graph.condition_index_.contains(key))
                throw LoadError("<condition " + key + ">", "key", "condition key declared twice");
            graph.conditions_.push_back({key, *category});
            graph.condition_index_[key];
        }
    }

    if (auto it = document.find("nodes"); it != document.end()) {
        if (!it->is_array()) throw LoadError("<nodes>", "", "expected a list");
        std::size_t position = 0;
        for (const auto& record : *it) {
            auto node = parse_node(record, position++);
            if (graph.index_.contains(node.name)) throw LoadError(node.name, "name", "duplicate node name");
            graph.index_.emplace(node.name, graph.nodes_.size());
            graph.nodes_.push_back(std::move(node));
        }
    }

    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& node : graph.nodes_) {
        graph.adjacency_[node.name];
        for (const auto& target : node.connections) {
            if (!graph.index_.contains(target)) throw ReferentialIntegrityError(node.name, target);
            if (target == node.name) continue;
            auto pair = std::minmax(node.name, target);
            edges.emplace(pair.first, pair.second);
            graph.adjacency_[node.name].insert(target);
            graph.adjacency_[target].insert(node.name);
        }
        std::set<std::string_view> seen;
        for (const auto& key : node.conditions) {
            auto index_it = graph.condition_index_.find(key);
            if (index_it == graph.condition_index_.end())
                throw LoadError(node.name, "conditions", "undeclared condition key '" + key + "'");
            if (!seen.insert(key).second) throw LoadError(node.name, "conditions", "condition key listed twice: " + key);
            index_it->second.insert(node.name);
        }
    }
    graph.loaded_edges_ = edges.size();
    return graph;
}

json KnowledgeGraph::to_json() const {
    json doc;
    doc["manifest"] = {{"node_count", manifest_.node_count},
                       {"edge_count", manifest_.edge_count},
                       {"condition_count", manifest_.condition_count},
                       {"version", manifest_.version}};
    json nodes = json::array();
    for (const auto& n : nodes_) {
        json rec = n.extra;
        rec["name"] = n.name;
        rec["kind"] = to_string(n.kind);
        if (n.namelist) rec["namelist"] = *n.namelist;
        rec["description"] = n.description;
        rec["data_type"] = to_string(n.data_type);
        if (n.default_value) rec["default_value"] = *n.default_value;
        if (n.allowed_values) rec["allowed_values"] = *n.allowed_values;
        rec["connections"] = n.connections;
        rec["conditions"] = n.conditions;
        rec["required"] = n.required;
        nodes.push_back(std::move(rec));
    }
    doc["nodes"] = std::move(nodes);
    json conditions = json::array();
    for (const auto& c : conditions_) conditions.push_back({{"key", c.key}, {"category", to_string(c.category)}});
    doc["conditions"] = std::move(conditions);
    return doc;
}

const KgNode* KnowledgeGraph::find(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &nodes_[it->second];
}

bool KnowledgeGraph::has_condition(std::string_view key) const {
    return condition_index_.find(key) != condition_index_.end();
}

std::optional<ConditionCategory> KnowledgeGraph::category_of(std::string_view key) const {
    for (const auto& c : conditions_)
        if (c.key == key) return c.category;
    return std::nullopt;
}

const std::set<std::string>& KnowledgeGraph::adjacency(std::string_view name) const {
    auto it = adjacency_.find(name);
    return it == adjacency_.end() ? empty_set() : it->second;
}

const std::set<std::string>& KnowledgeGraph::condition_members(std::string_view key) const {
    auto it = condition_index_.find(key);
    return it == condition_index_.end() ? empty_set() : it->second;
}

bool KnowledgeGraph::operator==(const KnowledgeGraph& other) const {
    return nodes_ == other.nodes_ && conditions_ == other.conditions_ && manifest_ == other.manifest_ &&
           adjacency_ == other.adjacency_ && condition_index_ == other.condition_index_;
}

std::optional<KgNode> get_node(const KnowledgeGraph& graph, std::string_view name) {
    if (const auto* node = graph.find(name)) return *node;
    return std::nullopt;
}

std::vector<KgNode> neighbors(const KnowledgeGraph& graph, std::string_view name) {
    if (!graph.find(name)) throw NotFoundError(std::string(name));
    std::vector<KgNode> out;
    for (const auto& other : graph.adjacency(name)) out.push_back(*graph.find(other));
    return out;
}

std::vector<KgNode> nodes_for_condition(const KnowledgeGraph& graph, std::string_view key) {
    if (!graph.has_condition(key)) {
        std::ostringstream msg;
        msg << "unknown condition key '" << key << "'; categories:";
        for (auto c : all_categories()) msg << ' ' << to_string(c);
        msg << "; known keys:";
        for (const auto& c : graph.condition_keys()) msg << " \"" << c.key << '"';
        throw UnknownConditionError(msg.str());
    }
    std::vector<KgNode> out;
    for (const auto& member : graph.condition_members(key)) out.push_back(*graph.find(member));
    return out;
}

GraphStats graph_stats(const KnowledgeGraph& graph) {
    GraphStats stats;
    stats.node_count = graph.nodes().size();
    std::set<std::pair<std::string_view, std::string_view>> edges;
    for (const auto& node : graph.nodes()) {
        for (const auto& target : node.connections) {
            if (target == node.name) continue;
            std::string_view a = node.name, b = target;
            if (b < a) std::swap(a, b);
            edges.emplace(a, b);
        }
    }
    stats.edge_count = edges.size();
    stats.condition_count = graph.condition_keys().size();

    const auto& m = graph.manifest();
    auto check = [&](const char* field, std::size_t declared, std::size_t live) {
        if (declared != live)
            stats.warnings.push_back(std::string("manifest ") + field + " = " + std::to_string(declared) +
                                     " but graph has " + std::to_string(live));
    };
    check("node_count", m.node_count, stats.node_count);
    check("edge_count", m.edge_count, stats.edge_count);
    check("condition_count", m.condition_count, stats.condition_count);
    return stats;
}

}  // namespace genius::kg
