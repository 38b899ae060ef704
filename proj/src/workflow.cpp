#include "genius/workflow.hpp"

#include <array>
#include <fstream>
#include <random>
#include <sstream>

#include "genius/interface.hpp"
#include "genius/prompts.hpp"
#include "genius/protocol.hpp"

namespace genius::workflow {

namespace {

constexpr std::array<std::string_view, kStateCount> kStateNames = {
    "Entry",          "InitializeWorkflow", "MaterialsDb",          "DocumentCollection",
    "ConditionExtraction", "RetrieveCandidateParameters", "EvaluateParameters", "PrepareInputTemplate",
    "QeInputGeneration", "QeRun",           "FailureDetected",      "CheckRetries",
    "AttemptCorrection", "SwitchModel",     "Finished",             "Failure"};

}  // namespace

std::string_view to_string(State state) { return kStateNames[static_cast<std::size_t>(state)]; }

std::optional<State> parse_state(std::string_view text) {
    for (std::size_t i = 0; i < kStateNames.size(); ++i)
        if (kStateNames[i] == text) return static_cast<State>(i);
    return std::nullopt;
}

bool is_terminal(State state) { return state == State::Finished || state == State::Failure; }

std::string_view to_string(EventStatus status) {
    switch (status) {
        case EventStatus::PENDING: return "PENDING";
        case EventStatus::SUCCESS: return "SUCCESS";
        case EventStatus::RETRY: return "RETRY";
        case EventStatus::ERROR: return "ERROR";
    }
    return "PENDING";
}

std::optional<EventStatus> parse_status(std::string_view text) {
    for (auto s : {EventStatus::PENDING, EventStatus::SUCCESS, EventStatus::RETRY, EventStatus::ERROR})
        if (to_string(s) == text) return s;
    return std::nullopt;
}

std::string_view to_string(Trigger trigger) {
    switch (trigger) {
        case Trigger::proceed: return "proceed";
        case Trigger::run_succeeded: return "run_succeeded";
        case Trigger::run_failed: return "run_failed";
        case Trigger::stage_failed: return "stage_failed";
        case Trigger::abort: return "abort";
    }
    return "proceed";
}

nlohmann::json TimelineEvent::to_json() const {
    nlohmann::json j = {{"timestamp", timestamp}, {"state", to_string(state)}, {"status", to_string(status)},
                        {"detail", detail}};
    j["model_ref"] = model_ref ? model_ref->to_json() : nlohmann::json(nullptr);
    return j;
}

TimelineEvent TimelineEvent::from_json(const nlohmann::json& j) {
    TimelineEvent e;
    e.timestamp = j.at("timestamp").get<double>();
    auto state = parse_state(j.at("state").get<std::string>());
    auto status = parse_status(j.at("status").get<std::string>());
    if (!state || !status) throw std::invalid_argument("bad timeline event");
    e.state = *state;
    e.status = *status;
    e.detail = j.value("detail", "");
    if (j.contains("model_ref") && j["model_ref"].is_object()) {
        const auto& m = j["model_ref"];
        e.model_ref = llm::ModelRef{m.at("provider_id").get<std::string>(), m.at("model_id").get<std::string>(),
                                    llm::parse_role(m.value("role", "worker")).value_or(llm::Role::worker)};
    }
    return e;
}

nlohmann::json WorkflowRun::snapshot() const {
    return {{"workflow_id", workflow_id},
            {"state", to_string(state)},
            {"total_attempts", total_attempts},
            {"model_index", model_index}};
}

nlohmann::json WorkflowRun::summary() const {
    nlohmann::json j = {
        {"workflow_id", workflow_id},
        {"status", outcome == Outcome::success ? "success" : outcome == Outcome::failure ? "failure" : "running"},
        {"final_state", to_string(state)},
        {"total_attempts", total_attempts},
        {"model_switches", model_switches},
        {"model_index", model_index},
        {"complexity_label", complexity ? std::string(genius::to_string(complexity->label)) : std::string("standard")},
        {"complexity_score", complexity ? complexity->score : -1},
        {"complexity_fallback", complexity ? complexity->fallback : true},
        {"prompt", request.raw_prompt},
        {"material_formula", request.material_formula},
        {"calculation_kind", request.calculation_kind},
        {"aborted", aborted},
    };
    if (!error.empty()) j["error"] = error;
    return j;
}

ProtocolViolation::ProtocolViolation(State state, Trigger trigger)
    : std::logic_error("illegal trigger " + std::string(to_string(trigger)) + " in state " + std::string(to_string(state))),
      state_(state),
      trigger_(trigger) {}

WorkflowRun step(WorkflowRun run, Trigger trigger) {
    const State s = run.state;
    if (is_terminal(s)) throw ProtocolViolation(s, trigger);
    auto fail = [&] {
        run.state = State::Failure;
        run.outcome = Outcome::failure;
        return run;
    };
    if (trigger == Trigger::abort) {
        run.aborted = true;
        return fail();
    }
    // any working state can fail; the loop states only reach it through unexpected backend errors
    if (trigger == Trigger::stage_failed && s != State::Entry) return fail();
    switch (s) {
        case State::Entry:
            if (trigger == Trigger::proceed) {
                run.state = State::InitializeWorkflow;
                return run;
            }
            break;
        case State::InitializeWorkflow:
        case State::MaterialsDb:
        case State::DocumentCollection:
        case State::ConditionExtraction:
        case State::RetrieveCandidateParameters:
        case State::EvaluateParameters:
        case State::PrepareInputTemplate:
        case State::QeInputGeneration:
            if (trigger == Trigger::proceed) {
                run.state = static_cast<State>(static_cast<int>(s) + 1);
                return run;
            }
            break;
        case State::QeRun:
            if (trigger == Trigger::run_succeeded) {
                run.state = State::Finished;
                run.outcome = Outcome::success;
                return run;
            }
            if (trigger == Trigger::run_failed) {
                run.state = State::FailureDetected;
                ++run.attempts_for_current_model;
                ++run.total_attempts;
                return run;
            }
            break;
        case State::FailureDetected:
            if (trigger == Trigger::proceed) {
                run.state = State::CheckRetries;
                return run;
            }
            break;
        case State::CheckRetries:
            if (trigger == Trigger::proceed) {
                if (run.attempts_for_current_model < run.retries_per_model) {
                    run.state = State::AttemptCorrection;
                } else if (run.model_index + 1 < run.hierarchy_size) {
                    run.state = State::SwitchModel;
                    ++run.model_index;
                    ++run.model_switches;
                    run.attempts_for_current_model = 0;
                    run.current_protocol.clear();
                } else {
                    return fail();
                }
                return run;
            }
            break;
        case State::AttemptCorrection:
            if (trigger == Trigger::proceed) {
                run.state = State::QeRun;
                return run;
            }
            break;
        case State::SwitchModel:
            if (trigger == Trigger::proceed) {
                run.state = State::PrepareInputTemplate;
                return run;
            }
            break;
        case State::Finished:
        case State::Failure:
            break;
    }
    throw ProtocolViolation(s, trigger);
}

std::string new_workflow_id() {
    thread_local std::mt19937_64 rng{std::random_device{}() ^ (static_cast<std::uint64_t>(std::random_device{}()) << 32)};
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                  static_cast<unsigned long long>(rng()));
    return buf;
}

nlohmann::json correction_context(const WorkflowRun& run, const runner::ErrorDescriptor& descriptor,
                                  const retrieval::NodeIndex& index) {
    if (run.state != State::AttemptCorrection)
        throw std::logic_error("correction context requested outside AttemptCorrection");
    std::string docs;
    if (!descriptor.keywords.empty()) {
        for (const auto& hit : retrieval::keyword_search(index, descriptor.keywords)) {
            const auto* node = index.graph().find(hit.node_name);
            if (!docs.empty()) docs += "\n";
            docs += node->name + ": " + node->description;
        }
    }
    std::string error = descriptor.message;
    if (descriptor.routine) error = "Error in routine " + *descriptor.routine + ": " + error;
    return {{"error", error}, {"docs", docs}, {"protocol", run.current_protocol}, {"prompt", run.request.raw_prompt}};
}

nlohmann::json correction_context(const WorkflowRun& run, const runner::ErrorDescriptor& descriptor,
                                  const kg::KnowledgeGraph& graph) {
    retrieval::NodeIndex index(graph);
    return correction_context(run, descriptor, index);
}

namespace {

class Driver {
public:
    Driver(const std::string& prompt, const llm::ModelHierarchy& hierarchy, const Backends& backends,
           const RunOptions& options)
        : hierarchy_(hierarchy), b_(backends), opt_(options) {
        hierarchy.validate();
        if (!b_.gateway || !b_.graph || !b_.index || !b_.materials || !b_.runner)
            throw std::invalid_argument("workflow backends are not fully wired");
        run_.workflow_id = opt_.workflow_id.empty() ? new_workflow_id() : opt_.workflow_id;
        run_.request.raw_prompt = prompt;
        run_.retries_per_model = hierarchy.retries_per_model;
        run_.hierarchy_size = static_cast<int>(hierarchy.size());
        wall_start_ = std::chrono::duration<double>(std::chrono::system_clock::now().time_since_epoch()).count();
        steady_start_ = std::chrono::steady_clock::now();
        if (opt_.data_dir) {
            dir_ = *opt_.data_dir / run_.workflow_id;
            std::filesystem::create_directories(*dir_);
            std::ofstream(*dir_ / "timeline.jsonl", std::ios::trunc);
        }
    }

    WorkflowRun run() {
        emit(EventStatus::SUCCESS, "workflow accepted");
        advance(Trigger::proceed);
        while (!is_terminal(run_.state)) {
            if (opt_.abort_requested && opt_.abort_requested()) {
                emit(EventStatus::ERROR, "aborted by request");
                run_.error = "aborted";
                advance(Trigger::abort);
                break;
            }
            try {
                stage();
            } catch (const std::exception& e) {
                run_.error = std::string(to_string(run_.state)) + ": " + e.what();
                emit(EventStatus::ERROR, e.what());
                advance(Trigger::stage_failed);
            }
        }
        emit(run_.state == State::Finished ? EventStatus::SUCCESS : EventStatus::ERROR,
             run_.state == State::Finished ? "protocol validated" : (run_.error.empty() ? "all models exhausted" : run_.error));
        if (run_.state == State::Failure && run_.error.empty()) run_.error = "retry budget exhausted on every model";
        persist();
        return run_;
    }

private:
    const llm::ModelRef& current_model() const { return hierarchy_.models.at(static_cast<std::size_t>(run_.model_index)); }

    llm::ModelRef role_model(llm::Role role) const {
        if (auto it = opt_.role_models.find(role); it != opt_.role_models.end()) return it->second;
        llm::ModelRef m = hierarchy_.models.front();
        m.role = role;
        return m;
    }

    double now() const {
        double t = wall_start_ + std::chrono::duration<double>(std::chrono::steady_clock::now() - steady_start_).count();
        return std::max(t, last_ts_);
    }

    void emit(EventStatus status, std::string detail, bool with_model = false) {
        TimelineEvent e;
        e.timestamp = last_ts_ = now();
        e.state = run_.state;
        e.status = status;
        e.detail = std::move(detail);
        if (with_model) e.model_ref = current_model();
        run_.timeline.push_back(e);
        if (dir_) {
            std::ofstream out(*dir_ / "timeline.jsonl", std::ios::app);
            out << e.to_json().dump() << "\n";
        }
        if (opt_.on_event) opt_.on_event(e, run_);
    }

    void advance(Trigger t) { run_ = step(std::move(run_), t); }

    template <class F>
    void entry_stage(F&& body) {
        for (int attempt = 1;; ++attempt) {
            try {
                body();
                return;
            } catch (const materials::MaterialNotFound&) {
                throw;
            } catch (const materials::FormulaError&) {
                throw;
            } catch (const std::exception& e) {
                if (attempt >= opt_.entry_retries) throw;
                emit(EventStatus::PENDING, "retrying stage after: " + std::string(e.what()));
            }
        }
    }

    void stage() {
        switch (run_.state) {
            case State::InitializeWorkflow: {
                emit(EventStatus::PENDING, "parsing request");
                entry_stage([&] {
                    run_.request = interface::parse_fields(run_.request.raw_prompt, *b_.gateway,
                                                           role_model(llm::Role::interface));
                });
                run_.complexity = interface::score_complexity(run_.request.raw_prompt, *b_.gateway,
                                                              role_model(llm::Role::scorer));
                emit(EventStatus::SUCCESS, "material " + run_.request.material_formula + ", " +
                                               run_.request.calculation_kind + ", complexity " +
                                               std::string(genius::to_string(run_.complexity->label)));
                break;
            }
            case State::MaterialsDb: {
                emit(EventStatus::PENDING, "resolving " + run_.request.material_formula);
                structure_ = materials::resolve_structure(run_.request, *b_.materials);
                emit(EventStatus::SUCCESS, std::string(materials::to_string(structure_.source)) + " structure with " +
                                               std::to_string(structure_.species.size()) + " atoms");
                break;
            }
            case State::DocumentCollection: {
                emit(EventStatus::PENDING, "keyword search");
                auto hits = retrieval::keyword_search(*b_.index, run_.request.keywords);
                emit(EventStatus::SUCCESS, std::to_string(hits.size()) + " documentation nodes");
                break;
            }
            case State::ConditionExtraction: {
                emit(EventStatus::PENDING, "extracting conditions");
                entry_stage([&] {
                    run_.request.condition_keys = interface::extract_conditions(
                        run_.request, *b_.graph, *b_.gateway, role_model(llm::Role::interface));
                });
                emit(EventStatus::SUCCESS, std::to_string(run_.request.condition_keys.size()) + " conditions");
                break;
            }
            case State::RetrieveCandidateParameters: {
                emit(EventStatus::PENDING, "assembling candidates");
                candidates_ = retrieval::assemble_candidates(*b_.index, run_.request.keywords, run_.request.condition_keys);
                emit(EventStatus::SUCCESS, std::to_string(candidates_.final.size()) + " candidate parameters");
                break;
            }
            case State::EvaluateParameters: {
                emit(EventStatus::PENDING, "evaluating candidates");
                entry_stage([&] {
                    run_.protocol_template = interface::evaluate_parameters(
                        candidates_, run_.request, *b_.graph, *b_.gateway, role_model(llm::Role::interface), &structure_);
                });
                emit(EventStatus::SUCCESS, std::to_string(run_.protocol_template.parameters.size()) + " parameters kept");
                break;
            }
            case State::PrepareInputTemplate: {
                emit(EventStatus::PENDING, run_.template_cached ? "restoring cached template" : "caching template");
                if (!run_.template_cached) {
                    check_template(run_.protocol_template, *b_.graph);
                    cached_template_ = run_.protocol_template;
                    run_.template_cached = true;
                } else {
                    run_.protocol_template = cached_template_;
                }
                emit(EventStatus::SUCCESS, "template ready");
                break;
            }
            case State::QeInputGeneration: {
                emit(EventStatus::PENDING, "generating input", true);
                std::string draft = protocol::render_input(run_.protocol_template, structure_);
                auto exchange = b_.gateway->run_template(current_model(), "protocol_generate",
                                                         {{"prompt", run_.request.raw_prompt},
                                                          {"template", run_.protocol_template.to_json().dump(2)},
                                                          {"draft", draft}});
                run_.current_protocol = llm::extract_fenced_block(exchange.response_text);
                emit(EventStatus::SUCCESS, "input generated", true);
                break;
            }
            case State::QeRun: {
                emit(EventStatus::PENDING, "running pw.x", true);
                ++runs_;
                std::filesystem::path workdir;
                if (dir_) workdir = *dir_ / ("run-" + std::to_string(runs_));
                auto outcome = b_.runner->execute(run_.current_protocol, workdir);
                if (outcome.success()) {
                    emit(EventStatus::SUCCESS, "run completed", true);
                    advance(Trigger::run_succeeded);
                } else {
                    last_crash_ = outcome.crash_text.value_or("exit code " + std::to_string(outcome.exit_code));
                    emit(EventStatus::ERROR, runner::crash_message(last_crash_), true);
                    advance(Trigger::run_failed);
                }
                return;
            }
            case State::FailureDetected: {
                emit(EventStatus::PENDING, "analysing crash");
                descriptor_ = runner::parse_crash(last_crash_, b_.gateway, role_model(llm::Role::error_keyworder), b_.graph);
                std::string kw;
                for (const auto& k : descriptor_.keywords) kw += (kw.empty() ? "" : ", ") + k;
                emit(EventStatus::SUCCESS, "keywords: " + kw);
                break;
            }
            case State::CheckRetries: {
                emit(EventStatus::PENDING, "attempt " + std::to_string(run_.attempts_for_current_model) + " of " +
                                               std::to_string(run_.retries_per_model) + " on model " +
                                               std::to_string(run_.model_index + 1) + " of " +
                                               std::to_string(run_.hierarchy_size));
                break;
            }
            case State::AttemptCorrection: {
                emit(EventStatus::PENDING, "requesting correction", true);
                auto bindings = correction_context(run_, descriptor_, *b_.index);
                try {
                    auto exchange = b_.gateway->run_template(current_model(), "error_correct", bindings);
                    run_.current_protocol = llm::extract_fenced_block(exchange.response_text);
                    emit(EventStatus::RETRY, "corrected protocol received", true);
                } catch (const llm::GatewayError& e) {
                    emit(EventStatus::RETRY, std::string("correction call failed, rerunning latest protocol: ") + e.what(),
                         true);
                }
                break;
            }
            case State::SwitchModel: {
                emit(EventStatus::RETRY, "switching to " + current_model().model_id, true);
                break;
            }
            default:
                throw std::logic_error("no stage for state " + std::string(to_string(run_.state)));
        }
        advance(Trigger::proceed);
    }

    void persist() {
        if (!dir_) return;
        std::ofstream(*dir_ / "result.json") << run_.summary().dump(2) << "\n";
        if (run_.template_cached) std::ofstream(*dir_ / "template.json") << cached_template_.to_json().dump(2) << "\n";
        if (run_.outcome == Outcome::success) std::ofstream(*dir_ / "pw.in") << run_.current_protocol;
    }

    const llm::ModelHierarchy& hierarchy_;
    Backends b_;
    const RunOptions& opt_;
    WorkflowRun run_;
    std::optional<std::filesystem::path> dir_;
    double wall_start_ = 0.0;
    double last_ts_ = 0.0;
    std::chrono::steady_clock::time_point steady_start_;
    materials::Structure structure_;
    retrieval::CandidateSet candidates_;
    ProtocolTemplate cached_template_;
    std::string last_crash_;
    runner::ErrorDescriptor descriptor_;
    int runs_ = 0;
};

}  // namespace

WorkflowRun run_workflow(const std::string& prompt, const llm::ModelHierarchy& hierarchy, const Backends& backends,
                         const RunOptions& options) {
    Driver driver(prompt, hierarchy, backends, options);
    return driver.run();
}

}  // namespace genius::workflow
