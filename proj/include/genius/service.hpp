#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "genius/kg.hpp"
#include "genius/llm.hpp"
#include "genius/materials.hpp"
#include "genius/retrieval.hpp"
#include "genius/runner.hpp"
#include "genius/workflow.hpp"

namespace httplib {
class Server;
}

namespace genius::service {

struct ResourcePaths {
    std::filesystem::path kg_file;
    std::filesystem::path structures_dir;
    std::filesystem::path catalog_file;

    /// GENIUS_RESOURCE_DIR when set, else the source tree's data/ directory.
    static ResourcePaths defaults();
    static ResourcePaths under(const std::filesystem::path& data_root);
};

/// Read-only state shared by every run.
class Environment {
public:
    explicit Environment(const ResourcePaths& paths);
    Environment(const Environment&) = delete;
    Environment& operator=(const Environment&) = delete;

    const kg::KnowledgeGraph& graph() const { return graph_; }
    const std::string& graph_json() const { return graph_json_; }
    const retrieval::NodeIndex& index() const { return index_; }
    const materials::FixtureBackend& materials() const { return materials_; }
    const nlohmann::json& base_catalog() const { return base_catalog_; }

private:
    std::string graph_json_;
    kg::KnowledgeGraph graph_;
    retrieval::NodeIndex index_;
    materials::FixtureBackend materials_;
    nlohmann::json base_catalog_;
};

class PayloadError : public std::invalid_argument {
public:
    explicit PayloadError(std::map<std::string, std::string> fields);
    static PayloadError field(const std::string& name, const std::string& message);
    const std::map<std::string, std::string>& fields() const { return fields_; }

private:
    std::map<std::string, std::string> fields_;
};

class CredentialError : public std::runtime_error {
public:
    explicit CredentialError(std::string provider_id);
    const std::string& provider_id() const { return provider_id_; }

private:
    std::string provider_id_;
};

struct WorkflowPayload {
    std::string calculation_prompt;
    std::vector<std::string> gen_model_hierarchy;
    std::map<std::string, std::string> model_config;  // role -> model spec
    nlohmann::json interface_agent_kwargs = nlohmann::json::object();
    std::string target_api = "scripted";
    // catalog, catalog_file, fault_script, backend ("simulated" | "external"), pw_command, base_url,
    // retries_per_model
    nlohmann::json project_config = nlohmann::json::object();

    /// Throws PayloadError naming every offending field.
    static WorkflowPayload parse(const nlohmann::json& body);
    nlohmann::json to_json() const;
};

/// Scenario file -> payload running it against the scripted provider and simulated runner.
WorkflowPayload scenario_payload(const nlohmann::json& scenario);

/// Everything needed to start one run; owns the per-run gateway and runner.
struct PreparedRun {
    std::string prompt;
    llm::ModelHierarchy hierarchy;
    std::map<llm::Role, llm::ModelRef> role_models;
    int entry_retries = 3;
    std::unique_ptr<llm::Gateway> gateway;
    std::unique_ptr<runner::Runner> runner;
};

/// Validates providers and credentials (CredentialError) and builds the gateway and runner.
PreparedRun prepare(const WorkflowPayload& payload, const Environment& env);

workflow::WorkflowRun execute(PreparedRun& run, const Environment& env, workflow::RunOptions options = {});

struct ServiceConfig {
    std::optional<std::filesystem::path> data_dir;
    std::chrono::milliseconds heartbeat{15000};
};

struct LogEntry {
    std::string workflow_id;
    workflow::TimelineEvent event;
};

/// In-memory run registry. Each run executes on its own thread.
class Registry {
public:
    Registry(std::shared_ptr<const Environment> env, ServiceConfig config);
    ~Registry();
    Registry(const Registry&) = delete;
    Registry& operator=(const Registry&) = delete;

    /// Throws PayloadError or CredentialError.
    std::string submit(const WorkflowPayload& payload);

    bool known(const std::string& id) const;
    std::optional<nlohmann::json> status(const std::string& id) const;
    /// nullopt: unknown id. Otherwise {"done": bool, "body": result document}.
    std::optional<std::pair<bool, nlohmann::json>> results(const std::string& id) const;
    std::optional<std::vector<workflow::TimelineEvent>> timeline(const std::string& id) const;
    /// Requests an abort at the next state boundary. nullopt for an unknown id, else whether the run was still live.
    std::optional<bool> abort(const std::string& id);

    /// Blocks until the run is terminal or `timeout` passes. Returns true when terminal.
    bool wait(const std::string& id, std::chrono::milliseconds timeout) const;

    /// Events of one run starting at index `from`; blocks up to `timeout` when none are available.
    /// Sets `finished` once the run is terminal and every event has been returned.
    std::vector<workflow::TimelineEvent> events_since(const std::string& id, std::size_t from,
                                                      std::chrono::milliseconds timeout, bool& finished) const;
    /// Global feed position.
    std::size_t log_size() const;
    std::vector<LogEntry> log_since(std::size_t from, std::chrono::milliseconds timeout) const;

    void shutdown();
    bool stopping() const { return stopping_; }
    const Environment& environment() const { return *env_; }
    const ServiceConfig& config() const { return config_; }

private:
    struct Record;
    std::shared_ptr<Record> find(const std::string& id) const;

    std::shared_ptr<const Environment> env_;
    ServiceConfig config_;
    mutable std::mutex mutex_;
    mutable std::condition_variable log_cv_;
    std::map<std::string, std::shared_ptr<Record>> runs_;
    std::vector<LogEntry> log_;
    std::atomic<bool> stopping_{false};
};

/// POST /workflow/, GET /workflow-status/{id}, GET /results/{id}, GET /timeline/{id}, GET /logs,
/// DELETE /workflow/{id}, GET /kg.json.
void install_routes(httplib::Server& server, Registry& registry);

/// Server-sent event frame for one timeline event.
std::string sse_frame(const workflow::TimelineEvent& event, const std::string& id);

}  // namespace genius::service
