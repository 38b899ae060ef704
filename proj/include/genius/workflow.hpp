#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genius/kg.hpp"
#include "genius/llm.hpp"
#include "genius/materials.hpp"
#include "genius/request.hpp"
#include "genius/retrieval.hpp"
#include "genius/runner.hpp"

namespace genius::workflow {

enum class State {
    Entry,
    InitializeWorkflow,
    MaterialsDb,
    DocumentCollection,
    ConditionExtraction,
    RetrieveCandidateParameters,
    EvaluateParameters,
    PrepareInputTemplate,
    QeInputGeneration,
    QeRun,
    FailureDetected,
    CheckRetries,
    AttemptCorrection,
    SwitchModel,
    Finished,
    Failure,
};

inline constexpr std::size_t kStateCount = 16;

std::string_view to_string(State state);
std::optional<State> parse_state(std::string_view text);
bool is_terminal(State state);

enum class EventStatus { PENDING, SUCCESS, RETRY, ERROR };

std::string_view to_string(EventStatus status);
std::optional<EventStatus> parse_status(std::string_view text);

enum class Trigger { proceed, run_succeeded, run_failed, stage_failed, abort };

std::string_view to_string(Trigger trigger);

struct TimelineEvent {
    double timestamp = 0.0;  // seconds since the Unix epoch, monotone within a run
    State state = State::Entry;
    EventStatus status = EventStatus::PENDING;
    std::string detail;
    std::optional<llm::ModelRef> model_ref;

    nlohmann::json to_json() const;
    static TimelineEvent from_json(const nlohmann::json& j);
};

enum class Outcome { success, failure };

struct WorkflowRun {
    std::string workflow_id;
    ParsedRequest request;
    ProtocolTemplate protocol_template;
    bool template_cached = false;
    std::string current_protocol;
    State state = State::Entry;
    int model_index = 0;
    int attempts_for_current_model = 0;
    int total_attempts = 0;
    int model_switches = 0;
    int retries_per_model = 3;
    int hierarchy_size = 1;
    std::vector<TimelineEvent> timeline;
    std::optional<Outcome> outcome;
    std::optional<ComplexityScore> complexity;
    std::string error;
    bool aborted = false;

    /// {workflow_id, state, total_attempts, model_index}
    nlohmann::json snapshot() const;
    /// result.json: {status, total_attempts, model_switches, complexity_label, ...}
    nlohmann::json summary() const;
};

class ProtocolViolation : public std::logic_error {
public:
    ProtocolViolation(State state, Trigger trigger);
    State state() const { return state_; }
    Trigger trigger() const { return trigger_; }

private:
    State state_;
    Trigger trigger_;
};

/// Pure transition. QeRun failure counts one attempt; CheckRetries chooses correction, model switch or Failure.
WorkflowRun step(WorkflowRun run, Trigger trigger);

struct Backends {
    llm::Gateway* gateway = nullptr;
    const kg::KnowledgeGraph* graph = nullptr;
    const retrieval::NodeIndex* index = nullptr;
    const materials::Backend* materials = nullptr;
    runner::Runner* runner = nullptr;
};

struct RunOptions {
    std::string workflow_id;  // generated when empty
    std::optional<std::filesystem::path> data_dir;
    // Models for interface, scorer and error_keyworder roles; default to the first hierarchy model.
    std::map<llm::Role, llm::ModelRef> role_models;
    std::function<void(const TimelineEvent&, const WorkflowRun&)> on_event;
    std::function<bool()> abort_requested;
    int entry_retries = 3;
};

/// 128 random bits as 32 lowercase hex digits.
std::string new_workflow_id();

WorkflowRun run_workflow(const std::string& prompt, const llm::ModelHierarchy& hierarchy, const Backends& backends,
                         const RunOptions& options = {});

/// Bindings for error_correct: error, docs, protocol, prompt and nothing else.
nlohmann::json correction_context(const WorkflowRun& run, const runner::ErrorDescriptor& descriptor,
                                  const retrieval::NodeIndex& index);
nlohmann::json correction_context(const WorkflowRun& run, const runner::ErrorDescriptor& descriptor,
                                  const kg::KnowledgeGraph& graph);

}  // namespace genius::workflow
