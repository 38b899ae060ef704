#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace genius::kg {

enum class NodeKind { namelist_parameter, card };
enum class DataType { CHARACTER, REAL, INTEGER, LOGICAL, COMPOSITE };

enum class ConditionCategory {
    calculation_type,
    functional_and_method,
    cell_and_material_properties,
    pseudopotential,
    magnetism_and_spin,
    isolated_systems,
    kpoint_settings,
    electric_field,
    occupation_types,
};

inline constexpr std::size_t kConditionCategoryCount = 9;

std::string_view to_string(NodeKind kind);
std::string_view to_string(DataType type);
std::string_view to_string(ConditionCategory category);
std::optional<DataType> parse_data_type(std::string_view text);
std::optional<ConditionCategory> parse_category(std::string_view text);
const std::vector<ConditionCategory>& all_categories();

struct KgNode {
    std::string name;
    NodeKind kind = NodeKind::namelist_parameter;
    std::optional<std::string> namelist;
    std::string description;
    DataType data_type = DataType::CHARACTER;
    std::optional<std::string> default_value;
    std::optional<std::vector<std::string>> allowed_values;
    std::vector<std::string> connections;
    std::vector<std::string> conditions;
    bool required = false;
    // Fields not in the schema, kept verbatim so a re-serialized graph loses nothing.
    nlohmann::json extra = nlohmann::json::object();

    bool operator==(const KgNode&) const = default;
};

struct ConditionKey {
    std::string key;
    ConditionCategory category;

    bool operator==(const ConditionKey&) const = default;
};

struct Manifest {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::size_t condition_count = 0;
    std::string version;

    bool operator==(const Manifest&) const = default;
};

struct GraphStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::size_t condition_count = 0;
    // One entry per manifest field that disagrees with the live structures.
    std::vector<std::string> warnings;
};

class LoadError : public std::runtime_error {
public:
    LoadError(std::string node, std::string field, const std::string& message);
    const std::string& node() const { return node_; }
    const std::string& field() const { return field_; }

private:
    std::string node_;
    std::string field_;
};

class ReferentialIntegrityError : public LoadError {
public:
    ReferentialIntegrityError(std::string node, std::string missing);
    const std::string& missing() const { return missing_; }

private:
    std::string missing_;
};

class UnknownConditionError : public std::invalid_argument {
public:
    explicit UnknownConditionError(const std::string& message) : std::invalid_argument(message) {}
};

class NotFoundError : public std::out_of_range {
public:
    explicit NotFoundError(const std::string& name) : std::out_of_range("unknown KG node: " + name) {}
};

/// Immutable after load; safe to share between concurrent workflows.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;

    static KnowledgeGraph load(std::string_view document);
    static KnowledgeGraph load(const nlohmann::json& document);
    static KnowledgeGraph load_file(const std::string& path);

    nlohmann::json to_json() const;

    const KgNode* find(std::string_view name) const;
    const std::vector<KgNode>& nodes() const { return nodes_; }
    const std::vector<ConditionKey>& condition_keys() const { return conditions_; }
    const Manifest& manifest() const { return manifest_; }
    bool has_condition(std::string_view key) const;
    std::optional<ConditionCategory> category_of(std::string_view key) const;

    /// Undirected closure of the connections lists.
    const std::set<std::string>& adjacency(std::string_view name) const;
    const std::set<std::string>& condition_members(std::string_view key) const;

    /// Counts recorded while loading; graph_stats recomputes them independently.
    std::size_t loaded_edge_count() const { return loaded_edges_; }

    bool operator==(const KnowledgeGraph& other) const;

private:
    std::vector<KgNode> nodes_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::map<std::string, std::set<std::string>, std::less<>> adjacency_;
    std::vector<ConditionKey> conditions_;
    std::map<std::string, std::set<std::string>, std::less<>> condition_index_;
    Manifest manifest_;
    std::size_t loaded_edges_ = 0;
};

std::optional<KgNode> get_node(const KnowledgeGraph& graph, std::string_view name);

/// Nodes one connection edge away, ordered by name. Throws NotFoundError.
std::vector<KgNode> neighbors(const KnowledgeGraph& graph, std::string_view name);

/// Members of a condition key, ordered by name. Throws UnknownConditionError.
std::vector<KgNode> nodes_for_condition(const KnowledgeGraph& graph, std::string_view key);

GraphStats graph_stats(const KnowledgeGraph& graph);

}  // namespace genius::kg
