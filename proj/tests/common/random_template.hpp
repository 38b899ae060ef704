#pragma once

// Random templates that satisfy check_template against a graph, for round-trip tests.

#include <cmath>
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "genius/kg.hpp"
#include "genius/materials.hpp"
#include "genius/protocol.hpp"
#include "genius/request.hpp"
#include "genius/value.hpp"

namespace testsupport {

inline bool namelist_emitted(const std::string& section, const std::string& calc) {
    if (section == "CONTROL" || section == "SYSTEM" || section == "ELECTRONS" || section == "FCP" || section == "RISM")
        return true;
    if (section == "IONS") return genius::protocol::moves_ions(calc);
    if (section == "CELL") return genius::protocol::variable_cell(calc);
    return false;
}

inline bool renderer_owned(const std::string& name) {
    static const std::vector<std::string> owned = {"ibrav", "nat", "ntyp", "celldm", "A", "B", "C", "cosAB", "cosAC",
                                                   "cosBC", "calculation"};
    return std::find(owned.begin(), owned.end(), name) != owned.end();
}

inline std::string random_text(std::mt19937_64& rng) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-.+ /!,='";
    std::uniform_int_distribution<int> len(0, 12);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) s += alphabet[pick(rng)];
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

inline genius::Value random_value(const genius::kg::KgNode& node, std::mt19937_64& rng) {
    using genius::kg::DataType;
    std::uniform_int_distribution<int> coin(0, 1);
    if (node.allowed_values && !node.allowed_values->empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, node.allowed_values->size() - 1);
        auto v = genius::value_from_text((*node.allowed_values)[pick(rng)], node.data_type);
        if (v) return *v;
    }
    switch (node.data_type) {
        case DataType::LOGICAL: return genius::Value{coin(rng) == 1};
        case DataType::INTEGER: return genius::Value{std::int64_t{std::uniform_int_distribution<int>(-50, 5000)(rng)}};
        case DataType::REAL: {
            std::uniform_real_distribution<double> mant(-10.0, 10.0);
            std::uniform_int_distribution<int> ex(-12, 6);
            return genius::Value{mant(rng) * std::pow(10.0, ex(rng))};
        }
        default: return genius::Value{random_text(rng)};
    }
}

inline std::string random_kpoints(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> form(0, 2), n(1, 16), shift(0, 1);
    switch (form(rng)) {
        case 0: return "gamma";
        case 1: return std::to_string(n(rng)) + " " + std::to_string(n(rng)) + " " + std::to_string(n(rng));
        default:
            return "automatic " + std::to_string(n(rng)) + " " + std::to_string(n(rng)) + " " + std::to_string(n(rng)) +
                   " " + std::to_string(shift(rng)) + " " + std::to_string(shift(rng)) + " " + std::to_string(shift(rng));
    }
}

inline genius::ProtocolTemplate random_template(const genius::kg::KnowledgeGraph& graph, std::mt19937_64& rng) {
    static const std::vector<std::string> kinds = {"scf", "nscf", "bands", "relax", "md", "vc-relax", "vc-md"};
    genius::ProtocolTemplate t;
    std::string calc = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
    t.parameters.push_back({"calculation", genius::Value{calc}, genius::kg::DataType::CHARACTER, "", "CONTROL"});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double keep = u(rng) * 0.3;
    for (const auto& node : graph.nodes()) {
        if (node.kind != genius::kg::NodeKind::namelist_parameter || !node.namelist) continue;
        if (renderer_owned(node.name) || !namelist_emitted(*node.namelist, calc)) continue;
        if (u(rng) > keep) continue;
        t.parameters.push_back({node.name, random_value(node, rng), node.data_type, "", *node.namelist});
    }
    t.parameters.push_back(
        {"K_POINTS", genius::Value{random_kpoints(rng)}, genius::kg::DataType::COMPOSITE, "", ""});
    std::sort(t.parameters.begin(), t.parameters.end(),
              [](const auto& a, const auto& b) { return a.node_name < b.node_name; });
    return t;
}

/// Every rendered template value can be found at its place in `doc`.
inline bool template_values_present(const genius::ProtocolTemplate& t, const genius::protocol::ProtocolDocument& doc,
                                    std::string* why = nullptr) {
    for (const auto& p : t.parameters) {
        if (p.section.empty() || !p.value) continue;
        std::string key = genius::protocol::is_per_species(p.node_name) ? p.node_name + "(1)" : p.node_name;
        const auto* v = doc.get(p.section, key);
        if (!v || !(*v == *p.value)) {
            if (why) *why = p.section + "." + key;
            return false;
        }
    }
    return true;
}

}  // namespace testsupport
