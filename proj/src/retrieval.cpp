#include "genius/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "genius/kernels.hpp"

namespace genius::retrieval {

std::int32_t SparseVector::at(std::uint32_t index) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), index,
                               [](const auto& e, std::uint32_t i) { return e.first < i; });
    return (it != entries.end() && it->first == index) ? it->second : 0;
}

double SparseVector::norm() const {
    double sum = 0.0;
    for (const auto& [index, weight] : entries) sum += static_cast<double>(weight) * weight;
    return std::sqrt(sum);
}

nlohmann::json CandidateSet::to_json() const {
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& h : keyword_hits) hits.push_back({{"node", h.node_name}, {"similarity", h.similarity}});
    return {{"required", required},
            {"keyword_hits", hits},
            {"condition_hits", condition_hits},
            {"expanded", expanded},
            {"final", final}};
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2) tokens.push_back(current);
        current.clear();
    };
    for (unsigned char c : text) {
        if (std::isalnum(c)) current.push_back(static_cast<char>(std::tolower(c)));
        else flush();
    }
    flush();
    return tokens;
}

SparseVector vectorize(std::string_view text) {
    std::map<std::uint32_t, std::int32_t> counts;
    for (const auto& token : tokenize(text)) {
        auto h = fnv1a64(token);
        auto index = static_cast<std::uint32_t>(h % kFeatureDimension);
        counts[index] += (h >> 63) == 0 ? 1 : -1;
    }
    SparseVector v;
    for (const auto& [index, weight] : counts)
        if (weight != 0) v.entries.emplace_back(index, weight);
    return v;
}

double dot(const SparseVector& a, const SparseVector& b) {
    double sum = 0.0;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() && ib != b.entries.end()) {
        if (ia->first < ib->first) ++ia;
        else if (ib->first < ia->first) ++ib;
        else {
            sum += static_cast<double>(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return sum;
}

double cosine(const SparseVector& a, const SparseVector& b) {
    double na = a.norm();
    double nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

std::size_t top_fraction_count(std::size_t positives) {
    // ceil(0.7 * N) in integer arithmetic; 0.7 * N in floating point overshoots at N = 10, 20, ...
    return (7 * positives + 9) / 10;
}

NodeIndex::NodeIndex(const kg::KnowledgeGraph& graph) : graph_(&graph) {
    vectors_.reserve(graph.nodes().size());
    for (const auto& node : graph.nodes()) vectors_.push_back(vectorize(node.name + " " + node.description));
}

std::vector<RankedNode> keyword_search(const NodeIndex& index, const std::vector<std::string>& keywords) {
    std::string joined;
    for (const auto& k : keywords) {
        if (!joined.empty()) joined.push_back(' ');
        joined += k;
    }
    auto query = vectorize(joined);
    if (query.empty()) return {};

    auto scores = kernels::cosine_scores(query, index.vectors());
    const auto& nodes = index.graph().nodes();
    std::vector<RankedNode> ranked;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (scores[i] > 0.0) ranked.push_back({nodes[i].name, scores[i]});
    std::sort(ranked.begin(), ranked.end(), [](const RankedNode& a, const RankedNode& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.node_name < b.node_name;
    });
    ranked.resize(top_fraction_count(ranked.size()));
    return ranked;
}

std::vector<RankedNode> keyword_search(const kg::KnowledgeGraph& graph, const std::vector<std::string>& keywords) {
    return keyword_search(NodeIndex(graph), keywords);
}

CandidateSet assemble_candidates(const NodeIndex& index, const std::vector<std::string>& keywords,
                                 const std::vector<std::string>& condition_keys) {
    const auto& graph = index.graph();
    CandidateSet set;

    std::set<std::string> required;
    for (const auto& node : graph.nodes())
        if (node.required) required.insert(node.name);
    set.required.assign(required.begin(), required.end());

    set.keyword_hits = keyword_search(index, keywords);

    std::set<std::string> condition_hits;
    for (const auto& key : condition_keys)
        for (const auto& node : kg::nodes_for_condition(graph, key)) condition_hits.insert(node.name);
    set.condition_hits.assign(condition_hits.begin(), condition_hits.end());

    std::set<std::string> expanded;
    for (const auto& name : condition_hits)
        for (const auto& other : graph.adjacency(name)) expanded.insert(other);
    set.expanded.assign(expanded.begin(), expanded.end());

    std::set<std::string> seen;
    auto push = [&](const std::string& name) {
        if (seen.insert(name).second) set.final.push_back(name);
    };
    for (const auto& n : set.required) push(n);
    for (const auto& h : set.keyword_hits) push(h.node_name);
    for (const auto& n : set.condition_hits) push(n);
    for (const auto& n : set.expanded) push(n);
    return set;
}

CandidateSet assemble_candidates(const kg::KnowledgeGraph& graph, const std::vector<std::string>& keywords,
                                 const std::vector<std::string>& condition_keys) {
    return assemble_candidates(NodeIndex(graph), keywords, condition_keys);
}

}  // namespace genius::retrieval
