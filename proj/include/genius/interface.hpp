#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "genius/kg.hpp"
#include "genius/llm.hpp"
#include "genius/materials.hpp"
#include "genius/request.hpp"
#include "genius/retrieval.hpp"

namespace genius::interface {

/// Raised when the prompt cannot be turned into a ParsedRequest; ends the workflow at entry.
class ParseFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EvaluationError : public std::runtime_error {
public:
    EvaluationError(std::string node, const std::string& message)
        : std::runtime_error(message), node_(std::move(node)) {}
    const std::string& node() const { return node_; }

private:
    std::string node_;
};

inline constexpr std::string_view kCalculationKinds[] = {"scf", "nscf", "bands", "relax", "md", "vc-relax", "vc-md"};

/// interface_parse: keywords, formula, dimensionality and calculation kind. Conditions left empty.
ParsedRequest parse_fields(const std::string& prompt, llm::Gateway& gateway, const llm::ModelRef& model);

/// Conditions implied by the request itself, e.g. an elemental metal -> "Metallic systems".
std::vector<std::string> implicit_conditions(const ParsedRequest& request, const kg::KnowledgeGraph& graph);

/// condition_extract plus implicit conditions. Keys unknown to the graph are dropped.
std::vector<std::string> extract_conditions(const ParsedRequest& request, const kg::KnowledgeGraph& graph,
                                            llm::Gateway& gateway, const llm::ModelRef& model);

ParsedRequest parse_prompt(const std::string& prompt, const kg::KnowledgeGraph& graph, llm::Gateway& gateway,
                           const llm::ModelRef& model);

/// Nodes filled from the structure at render time and never sent to the evaluator.
bool is_structure_bound(std::string_view node_name);

/// Evaluates every candidate with parameter_evaluate, concurrently, and merges by node name.
ProtocolTemplate evaluate_parameters(const retrieval::CandidateSet& candidates, const ParsedRequest& request,
                                     const kg::KnowledgeGraph& graph, llm::Gateway& gateway,
                                     const llm::ModelRef& model, const materials::Structure* structure = nullptr);

inline constexpr std::size_t kComplexityFeatureCount = 10;

const std::vector<std::string>& complexity_features();

/// Keyword rules for the ten rubric features; used as a cross-check and for the scorer prompt.
std::vector<bool> rule_based_features(std::string_view prompt);

ComplexityScore score_from_features(const std::vector<bool>& features);

/// complexity_score template; on any failure the label falls back to standard with fallback set.
ComplexityScore score_complexity(const std::string& prompt, llm::Gateway& gateway, const llm::ModelRef& model);

}  // namespace genius::interface
