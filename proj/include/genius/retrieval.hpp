#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "genius/kg.hpp"

namespace genius::retrieval {

inline constexpr std::uint32_t kFeatureDimension = 1u << 17;

/// Hashed bag-of-tokens; entries sorted by index, zero weights never stored.
struct SparseVector {
    std::vector<std::pair<std::uint32_t, std::int32_t>> entries;

    bool empty() const { return entries.empty(); }
    std::int32_t at(std::uint32_t index) const;
    double norm() const;
    bool operator==(const SparseVector&) const = default;
};

struct RankedNode {
    std::string node_name;
    double similarity = 0.0;
    bool operator==(const RankedNode&) const = default;
};

struct CandidateSet {
    std::vector<std::string> required;
    std::vector<RankedNode> keyword_hits;
    std::vector<std::string> condition_hits;
    std::vector<std::string> expanded;
    std::vector<std::string> final;

    nlohmann::json to_json() const;
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Lowercase, split on non-alphanumeric ASCII, drop tokens shorter than two bytes.
std::vector<std::string> tokenize(std::string_view text);

SparseVector vectorize(std::string_view text);

double dot(const SparseVector& a, const SparseVector& b);
double cosine(const SparseVector& a, const SparseVector& b);

/// Number of ranked nodes kept out of `positives` strictly positive matches.
std::size_t top_fraction_count(std::size_t positives);

/// Precomputed node vectors (name + description) for repeated searches over one graph.
class NodeIndex {
public:
    explicit NodeIndex(const kg::KnowledgeGraph& graph);

    const kg::KnowledgeGraph& graph() const { return *graph_; }
    const std::vector<SparseVector>& vectors() const { return vectors_; }

private:
    const kg::KnowledgeGraph* graph_;
    std::vector<SparseVector> vectors_;
};

std::vector<RankedNode> keyword_search(const NodeIndex& index, const std::vector<std::string>& keywords);
std::vector<RankedNode> keyword_search(const kg::KnowledgeGraph& graph, const std::vector<std::string>& keywords);

CandidateSet assemble_candidates(const NodeIndex& index, const std::vector<std::string>& keywords,
                                 const std::vector<std::string>& condition_keys);
CandidateSet assemble_candidates(const kg::KnowledgeGraph& graph, const std::vector<std::string>& keywords,
                                 const std::vector<std::string>& condition_keys);

}  // namespace genius::retrieval
