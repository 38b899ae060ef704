#pragma once

#include <chrono>
#include <filesystem>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genius/kg.hpp"
#include "genius/llm.hpp"

namespace genius::runner {

struct RunOutcome {
    int exit_code = 0;
    std::optional<std::string> crash_text;
    std::string stdout_tail;
    double duration = 0.0;  // seconds

    /// Valid protocol: zero exit code and no CRASH file.
    bool success() const { return exit_code == 0 && !crash_text; }
    nlohmann::json to_json() const;
};

struct ErrorDescriptor {
    std::optional<std::string> routine;
    std::string message;
    std::vector<std::string> keywords;

    nlohmann::json to_json() const;
};

class RunnerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FaultStep {
    int on_call = 1;  // 1-based invocation number
    bool fail = false;
    std::string crash_text;
};

/// [{"on_call": 1, "outcome": "fail", "crash_text": "..."}] or the shorthand ["fail", "pass", ...].
std::vector<FaultStep> parse_fault_script(const nlohmann::json& script);

class Runner {
public:
    virtual ~Runner() = default;
    /// Runs one protocol in `workdir` (created if needed).
    virtual RunOutcome execute(const std::string& input_text, const std::filesystem::path& workdir) = 0;
};

/// QE-style CRASH text: banner, "Error in routine <routine> (<code>):", message.
std::string crash_report(std::string_view routine, int code, std::string_view message);

/// Scripted calls override; any other call parses and statically validates the input and crashes on the
/// first error-severity finding, otherwise passes.
class SimulatedRunner : public Runner {
public:
    SimulatedRunner(const kg::KnowledgeGraph& graph, std::vector<FaultStep> script = {})
        : graph_(&graph), script_(std::move(script)) {}

    RunOutcome execute(const std::string& input_text, const std::filesystem::path& workdir) override;
    int calls() const;

private:
    const kg::KnowledgeGraph* graph_;
    std::vector<FaultStep> script_;
    mutable std::mutex mutex_;
    int calls_ = 0;
};

struct ExternalConfig {
    std::string binary = "pw.x";
    std::vector<std::string> args = {"-in", "pw.in"};
    std::chrono::seconds timeout{600};
};

class ExternalRunner : public Runner {
public:
    explicit ExternalRunner(ExternalConfig config) : config_(std::move(config)) {}
    RunOutcome execute(const std::string& input_text, const std::filesystem::path& workdir) override;

private:
    ExternalConfig config_;
};

/// Routine named by "Error in routine X" or "from X : error #", if any.
std::optional<std::string> crash_routine(std::string_view crash_text);

/// Crash text without banners, task and routine lines.
std::string crash_message(std::string_view crash_text);

/// Message tokens minus stop words.
std::vector<std::string> fallback_keywords(std::string_view message);

/// Routine and verbatim KG node names are always added; the gateway supplies the rest via error_keywords.
/// A null gateway, or any gateway failure, leaves the rule-based keywords only.
ErrorDescriptor parse_crash(std::string_view crash_text, llm::Gateway* gateway, const llm::ModelRef& model,
                            const kg::KnowledgeGraph* graph);

}  // namespace genius::runner
