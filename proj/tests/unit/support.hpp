#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include <json.hpp>

#include "genius/kg.hpp"
#include "genius/llm.hpp"
#include "genius/retrieval.hpp"

namespace testsupport {

inline std::filesystem::path data_dir() { return std::filesystem::path(GENIUS_SOURCE_DIR) / "data"; }

inline const genius::kg::KnowledgeGraph& graph() {
    static const auto g = genius::kg::KnowledgeGraph::load_file((data_dir() / "kg" / "pw_kg.json").string());
    return g;
}

inline const genius::retrieval::NodeIndex& index() {
    static const genius::retrieval::NodeIndex idx(graph());
    return idx;
}

inline nlohmann::json read_json(const std::filesystem::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

/// Gateway whose "scripted" provider answers from `catalog` first, then the shipped base catalog.
inline std::unique_ptr<genius::llm::Gateway> scripted_gateway(const nlohmann::json& catalog = nlohmann::json::object()) {
    auto provider = std::make_shared<genius::llm::ScriptedProvider>();
    if (!catalog.empty()) provider->merge(genius::llm::ScriptedProvider::from_json(catalog));
    provider->merge(genius::llm::ScriptedProvider::from_json(read_json(data_dir() / "catalogs" / "base.json")));
    auto gw = std::make_unique<genius::llm::Gateway>();
    gw->register_provider("scripted", provider);
    return gw;
}

inline genius::llm::ModelRef model(const std::string& id = "worker-small",
                                   genius::llm::Role role = genius::llm::Role::worker) {
    return {"scripted", id, role};
}

/// Small graph with `n` nodes p0..p{n-1}, each description containing `word`.
inline nlohmann::json tiny_graph(int n, const std::string& word = "cutoff") {
    nlohmann::json nodes = nlohmann::json::array();
    for (int i = 0; i < n; ++i)
        nodes.push_back({{"name", "p" + std::to_string(i)},
                         {"kind", "namelist_parameter"},
                         {"namelist", "SYSTEM"},
                         {"description", word + " parameter number " + std::to_string(i) + std::string(i, 'x')},
                         {"data_type", "REAL"},
                         {"required", false},
                         {"connections", nlohmann::json::array()},
                         {"conditions", nlohmann::json::array()}});
    return {{"manifest", {{"node_count", n}, {"edge_count", 0}, {"condition_count", 0}, {"version", "test"}}},
            {"conditions", nlohmann::json::array()},
            {"nodes", nodes}};
}

}  // namespace testsupport
