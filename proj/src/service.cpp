#include "genius/service.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <httplib.h>

namespace genius::service {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_blank(const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; }

}  // namespace

ResourcePaths ResourcePaths::under(const fs::path& root) {
    return {root / "kg" / "pw_kg.json", root / "structures", root / "catalogs" / "base.json"};
}

ResourcePaths ResourcePaths::defaults() {
    if (const char* dir = std::getenv("GENIUS_RESOURCE_DIR"); dir && *dir) return under(dir);
    return under(fs::path(GENIUS_SOURCE_DIR) / "data");
}

Environment::Environment(const ResourcePaths& paths)
    : graph_json_(read_text(paths.kg_file)),
      graph_(kg::KnowledgeGraph::load(std::string_view(graph_json_))),
      index_(graph_),
      materials_(paths.structures_dir),
      base_catalog_(json::parse(read_text(paths.catalog_file))) {}

PayloadError::PayloadError(std::map<std::string, std::string> fields)
    : std::invalid_argument("invalid workflow payload"), fields_(std::move(fields)) {}

PayloadError PayloadError::field(const std::string& name, const std::string& message) {
    return PayloadError(std::map<std::string, std::string>{{name, message}});
}

CredentialError::CredentialError(std::string provider_id)
    : std::runtime_error("missing credential for provider '" + provider_id + "' (set " +
                         llm::credential_variable(provider_id) + ")"),
      provider_id_(std::move(provider_id)) {}

WorkflowPayload WorkflowPayload::parse(const json& body) {
    std::map<std::string, std::string> errors;
    WorkflowPayload p;
    if (!body.is_object()) throw PayloadError::field("body", "must be a JSON object");

    if (!body.contains("calculation_prompt"))
        errors["calculation_prompt"] = "is required";
    else if (!body["calculation_prompt"].is_string() || is_blank(body["calculation_prompt"].get<std::string>()))
        errors["calculation_prompt"] = "must be a non-empty string";
    else
        p.calculation_prompt = body["calculation_prompt"].get<std::string>();

    if (!body.contains("gen_model_hierarchy")) {
        errors["gen_model_hierarchy"] = "is required";
    } else {
        const auto& h = body["gen_model_hierarchy"];
        if (!h.is_array() || h.empty()) {
            errors["gen_model_hierarchy"] = "must be a non-empty list of model ids";
        } else {
            for (const auto& m : h) {
                if (!m.is_string() || is_blank(m.get<std::string>())) {
                    errors["gen_model_hierarchy"] = "entries must be non-empty strings";
                    break;
                }
                p.gen_model_hierarchy.push_back(m.get<std::string>());
            }
        }
    }

    if (body.contains("model_config") && !body["model_config"].is_null()) {
        const auto& mc = body["model_config"];
        if (!mc.is_object()) {
            errors["model_config"] = "must be an object mapping task role to model id";
        } else {
            for (const auto& [role, model] : mc.items()) {
                auto r = llm::parse_role(role);
                if (!r || *r == llm::Role::worker || *r == llm::Role::referee) {
                    errors["model_config"] = "unknown task role '" + role + "' (interface, scorer, error_keyworder)";
                    break;
                }
                if (!model.is_string() || is_blank(model.get<std::string>())) {
                    errors["model_config"] = "model for '" + role + "' must be a non-empty string";
                    break;
                }
                p.model_config[role] = model.get<std::string>();
            }
        }
    }

    if (body.contains("interface_agent_kwargs") && !body["interface_agent_kwargs"].is_null()) {
        if (!body["interface_agent_kwargs"].is_object())
            errors["interface_agent_kwargs"] = "must be an object";
        else
            p.interface_agent_kwargs = body["interface_agent_kwargs"];
    }

    if (body.contains("target_api") && !body["target_api"].is_null()) {
        if (!body["target_api"].is_string() || is_blank(body["target_api"].get<std::string>()))
            errors["target_api"] = "must be a non-empty string";
        else
            p.target_api = body["target_api"].get<std::string>();
    }

    if (body.contains("project_config") && !body["project_config"].is_null()) {
        const auto& pc = body["project_config"];
        if (!pc.is_object()) {
            errors["project_config"] = "must be an object";
        } else {
            p.project_config = pc;
            if (pc.contains("backend") &&
                (!pc["backend"].is_string() ||
                 (pc["backend"] != "simulated" && pc["backend"] != "external")))
                errors["project_config.backend"] = "must be \"simulated\" or \"external\"";
            if (pc.contains("retries_per_model") &&
                (!pc["retries_per_model"].is_number_integer() || pc["retries_per_model"].get<int>() < 1))
                errors["project_config.retries_per_model"] = "must be a positive integer";
            if (pc.contains("fault_script")) {
                try {
                    runner::parse_fault_script(pc["fault_script"]);
                } catch (const std::exception& e) {
                    errors["project_config.fault_script"] = e.what();
                }
            }
            if (pc.contains("catalog") && !pc["catalog"].is_object())
                errors["project_config.catalog"] = "must be an object";
        }
    }
    if (!errors.empty()) throw PayloadError(std::move(errors));
    return p;
}

json WorkflowPayload::to_json() const {
    return {{"calculation_prompt", calculation_prompt},
            {"gen_model_hierarchy", gen_model_hierarchy},
            {"model_config", model_config},
            {"interface_agent_kwargs", interface_agent_kwargs},
            {"target_api", target_api},
            {"project_config", project_config}};
}

WorkflowPayload scenario_payload(const json& scenario) {
    json body = {{"calculation_prompt", scenario.at("prompt")},
                 {"gen_model_hierarchy", scenario.at("hierarchy")},
                 {"target_api", "scripted"}};
    json pc = json::object();
    if (scenario.contains("catalog")) pc["catalog"] = scenario["catalog"];
    if (scenario.contains("fault_script")) pc["fault_script"] = scenario["fault_script"];
    if (scenario.contains("retries_per_model")) pc["retries_per_model"] = scenario["retries_per_model"];
    pc["backend"] = "simulated";
    body["project_config"] = pc;
    return WorkflowPayload::parse(body);
}

PreparedRun prepare(const WorkflowPayload& payload, const Environment& env) {
    PreparedRun run;
    run.prompt = payload.calculation_prompt;
    const auto& pc = payload.project_config;

    const std::size_t n = payload.gen_model_hierarchy.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto role = (n > 1 && i + 1 == n) ? llm::Role::referee : llm::Role::worker;
        run.hierarchy.models.push_back(llm::parse_model_spec(payload.gen_model_hierarchy[i], payload.target_api, role));
    }
    run.hierarchy.retries_per_model = pc.value("retries_per_model", 3);
    try {
        run.hierarchy.validate();
    } catch (const std::invalid_argument& e) {
        throw PayloadError::field("gen_model_hierarchy", e.what());
    }
    for (const auto& [role_name, spec] : payload.model_config) {
        auto role = *llm::parse_role(role_name);
        run.role_models[role] = llm::parse_model_spec(spec, payload.target_api, role);
    }
    if (payload.interface_agent_kwargs.contains("entry_retries")) {
        const auto& v = payload.interface_agent_kwargs["entry_retries"];
        if (!v.is_number_integer() || v.get<int>() < 1)
            throw PayloadError::field("interface_agent_kwargs.entry_retries", "must be a positive integer");
        run.entry_retries = v.get<int>();
    }

    std::set<std::string> providers;
    for (const auto& m : run.hierarchy.models) providers.insert(m.provider_id);
    for (const auto& [role, m] : run.role_models) providers.insert(m.provider_id);

    run.gateway = std::make_unique<llm::Gateway>();
    for (const auto& id : providers) {
        if (id == "scripted") {
            auto provider = std::make_shared<llm::ScriptedProvider>();
            if (pc.contains("catalog")) provider->merge(llm::ScriptedProvider::from_json(pc["catalog"]));
            if (pc.contains("catalog_file"))
                provider->merge(llm::ScriptedProvider::from_file(pc["catalog_file"].get<std::string>()));
            provider->merge(llm::ScriptedProvider::from_json(env.base_catalog()));
            run.gateway->register_provider(id, provider);
            continue;
        }
        auto key = llm::credential_for(id);
        if (!key) throw CredentialError(id);
        if (!pc.contains("base_url") || !pc["base_url"].is_string())
            throw PayloadError::field("project_config.base_url", "is required for provider '" + id + "'");
        llm::HttpChatProvider::Config cfg;
        cfg.base_url = pc["base_url"].get<std::string>();
        if (pc.contains("api_path")) cfg.path = pc["api_path"].get<std::string>();
        cfg.api_key = *key;
        run.gateway->register_provider(id, std::make_shared<llm::HttpChatProvider>(cfg));
    }

    if (pc.value("backend", std::string("simulated")) == "external") {
        runner::ExternalConfig cfg;
        if (pc.contains("pw_command")) {
            auto argv = pc["pw_command"].get<std::vector<std::string>>();
            if (argv.empty()) throw PayloadError::field("project_config.pw_command", "must not be empty");
            cfg.binary = argv.front();
            cfg.args.assign(argv.begin() + 1, argv.end());
        }
        if (pc.contains("timeout_s")) cfg.timeout = std::chrono::seconds(pc["timeout_s"].get<int>());
        run.runner = std::make_unique<runner::ExternalRunner>(cfg);
    } else {
        std::vector<runner::FaultStep> script;
        if (pc.contains("fault_script")) script = runner::parse_fault_script(pc["fault_script"]);
        run.runner = std::make_unique<runner::SimulatedRunner>(env.graph(), std::move(script));
    }
    return run;
}

workflow::WorkflowRun execute(PreparedRun& run, const Environment& env, workflow::RunOptions options) {
    workflow::Backends backends;
    backends.gateway = run.gateway.get();
    backends.graph = &env.graph();
    backends.index = &env.index();
    backends.materials = &env.materials();
    backends.runner = run.runner.get();
    for (const auto& [role, model] : run.role_models) options.role_models.emplace(role, model);
    options.entry_retries = run.entry_retries;
    return workflow::run_workflow(run.prompt, run.hierarchy, backends, options);
}

struct Registry::Record {
    std::string id;
    mutable std::mutex mutex;
    mutable std::condition_variable cv;
    json status;
    std::vector<workflow::TimelineEvent> events;
    bool done = false;
    json result;
    std::atomic<bool> abort{false};
    std::thread worker;
};

Registry::Registry(std::shared_ptr<const Environment> env, ServiceConfig config)
    : env_(std::move(env)), config_(std::move(config)) {}

Registry::~Registry() { shutdown(); }

void Registry::shutdown() {
    stopping_ = true;
    std::vector<std::shared_ptr<Record>> all;
    {
        std::lock_guard lock(mutex_);
        for (auto& [id, rec] : runs_) all.push_back(rec);
    }
    for (auto& rec : all) rec->abort = true;
    log_cv_.notify_all();
    for (auto& rec : all) {
        rec->cv.notify_all();
        if (rec->worker.joinable()) rec->worker.join();
    }
}

std::shared_ptr<Registry::Record> Registry::find(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = runs_.find(id);
    return it == runs_.end() ? nullptr : it->second;
}

std::string Registry::submit(const WorkflowPayload& payload) {
    if (stopping_) throw std::runtime_error("service is shutting down");
    auto prepared = std::make_shared<PreparedRun>(prepare(payload, *env_));
    auto rec = std::make_shared<Record>();
    rec->id = workflow::new_workflow_id();
    rec->status = {{"workflow_id", rec->id}, {"state", "Entry"}, {"total_attempts", 0}, {"model_index", 0}};
    {
        std::lock_guard lock(mutex_);
        runs_[rec->id] = rec;
    }

    workflow::RunOptions options;
    options.workflow_id = rec->id;
    options.data_dir = config_.data_dir;
    options.abort_requested = [r = rec.get()] { return r->abort.load(); };
    options.on_event = [this, r = rec.get()](const workflow::TimelineEvent& e, const workflow::WorkflowRun& run) {
        {
            std::lock_guard lock(r->mutex);
            r->events.push_back(e);
            r->status = run.snapshot();
        }
        r->cv.notify_all();
        {
            std::lock_guard lock(mutex_);
            log_.push_back({r->id, e});
        }
        log_cv_.notify_all();
    };

    rec->worker = std::thread([this, rec, prepared, options]() mutable {
        json result;
        try {
            auto run = execute(*prepared, *env_, options);
            result = run.summary();
            if (run.outcome == workflow::Outcome::success) result["input_text"] = run.current_protocol;
            std::lock_guard lock(rec->mutex);
            rec->status = run.snapshot();
        } catch (const std::exception& e) {
            result = {{"workflow_id", rec->id}, {"status", "failure"}, {"final_state", "Failure"}, {"error", e.what()}};
            std::lock_guard lock(rec->mutex);
            rec->status["state"] = "Failure";
        }
        {
            std::lock_guard lock(rec->mutex);
            rec->result = std::move(result);
            rec->done = true;
        }
        rec->cv.notify_all();
        log_cv_.notify_all();
    });
    return rec->id;
}

bool Registry::known(const std::string& id) const { return find(id) != nullptr; }

std::optional<json> Registry::status(const std::string& id) const {
    auto rec = find(id);
    if (!rec) return std::nullopt;
    std::lock_guard lock(rec->mutex);
    return rec->status;
}

std::optional<std::pair<bool, json>> Registry::results(const std::string& id) const {
    auto rec = find(id);
    if (!rec) return std::nullopt;
    std::lock_guard lock(rec->mutex);
    if (!rec->done) return std::make_pair(false, rec->status);
    return std::make_pair(true, rec->result);
}

std::optional<std::vector<workflow::TimelineEvent>> Registry::timeline(const std::string& id) const {
    auto rec = find(id);
    if (!rec) return std::nullopt;
    std::lock_guard lock(rec->mutex);
    return rec->events;
}

std::optional<bool> Registry::abort(const std::string& id) {
    auto rec = find(id);
    if (!rec) return std::nullopt;
    std::lock_guard lock(rec->mutex);
    if (rec->done) return false;
    rec->abort = true;
    return true;
}

bool Registry::wait(const std::string& id, std::chrono::milliseconds timeout) const {
    auto rec = find(id);
    if (!rec) return false;
    std::unique_lock lock(rec->mutex);
    return rec->cv.wait_for(lock, timeout, [&] { return rec->done; });
}

std::vector<workflow::TimelineEvent> Registry::events_since(const std::string& id, std::size_t from,
                                                            std::chrono::milliseconds timeout, bool& finished) const {
    finished = false;
    auto rec = find(id);
    if (!rec) {
        finished = true;
        return {};
    }
    std::unique_lock lock(rec->mutex);
    rec->cv.wait_for(lock, timeout, [&] { return rec->events.size() > from || rec->done || stopping_; });
    std::vector<workflow::TimelineEvent> out;
    if (from < rec->events.size()) out.assign(rec->events.begin() + static_cast<std::ptrdiff_t>(from), rec->events.end());
    finished = rec->done && from + out.size() >= rec->events.size();
    return out;
}

std::size_t Registry::log_size() const {
    std::lock_guard lock(mutex_);
    return log_.size();
}

std::vector<LogEntry> Registry::log_since(std::size_t from, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mutex_);
    log_cv_.wait_for(lock, timeout, [&] { return log_.size() > from || stopping_; });
    if (from >= log_.size()) return {};
    return {log_.begin() + static_cast<std::ptrdiff_t>(from), log_.end()};
}

std::string sse_frame(const workflow::TimelineEvent& event, const std::string& id) {
    return "id: " + id + "\nevent: timeline\ndata: " + event.to_json().dump() + "\n\n";
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
    send_json(res, status, {{"error", message}});
}

json timeline_json(const std::vector<workflow::TimelineEvent>& events) {
    json arr = json::array();
    for (const auto& e : events) arr.push_back(e.to_json());
    return arr;
}

}  // namespace

void install_routes(httplib::Server& server, Registry& registry) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });

    server.Post("/workflow/", [&registry](const httplib::Request& req, httplib::Response& res) {
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded()) return send_json(res, 400, {{"error", "invalid payload"}, {"fields", {{"body", "is not valid JSON"}}}});
        try {
            auto payload = WorkflowPayload::parse(body);
            auto id = registry.submit(payload);
            send_json(res, 202, {{"workflow_id", id}});
        } catch (const PayloadError& e) {
            send_json(res, 400, {{"error", "invalid payload"}, {"fields", e.fields()}});
        } catch (const CredentialError& e) {
            send_json(res, 401, {{"error", e.what()}, {"provider", e.provider_id()}});
        } catch (const std::exception& e) {
            send_error(res, 503, e.what());
        }
    });

    server.Get(R"(/workflow-status/([0-9A-Za-z_-]+))", [&registry](const httplib::Request& req, httplib::Response& res) {
        auto s = registry.status(req.matches[1]);
        if (!s) return send_error(res, 404, "unknown workflow id");
        send_json(res, 200, *s);
    });

    server.Get(R"(/results/([0-9A-Za-z_-]+))", [&registry](const httplib::Request& req, httplib::Response& res) {
        auto r = registry.results(req.matches[1]);
        if (!r) return send_error(res, 404, "unknown workflow id");
        if (!r->first) return send_json(res, 409, {{"error", "workflow still running"}, {"status", r->second}});
        send_json(res, 200, r->second);
    });

    server.Get(R"(/timeline/([0-9A-Za-z_-]+))", [&registry](const httplib::Request& req, httplib::Response& res) {
        auto t = registry.timeline(req.matches[1]);
        if (!t) return send_error(res, 404, "unknown workflow id");
        send_json(res, 200, {{"workflow_id", std::string(req.matches[1])}, {"events", timeline_json(*t)}});
    });

    server.Delete(R"(/workflow/([0-9A-Za-z_-]+))", [&registry](const httplib::Request& req, httplib::Response& res) {
        std::string id = req.matches[1];
        auto live = registry.abort(id);
        if (!live) return send_error(res, 404, "unknown workflow id");
        send_json(res, *live ? 202 : 200, {{"workflow_id", id}, {"abort_requested", *live}, {"status", *registry.status(id)}});
    });

    server.Get("/kg.json", [&registry](const httplib::Request&, httplib::Response& res) {
        res.set_content(registry.environment().graph_json(), "application/json");
    });

    server.Get("/logs", [&registry](const httplib::Request& req, httplib::Response& res) {
        const auto heartbeat = registry.config().heartbeat;
        res.set_header("Cache-Control", "no-cache");
        if (req.has_param("workflow_id")) {
            std::string id = req.get_param_value("workflow_id");
            if (!registry.known(id)) return send_error(res, 404, "unknown workflow id");
            auto next = std::make_shared<std::size_t>(0);
            res.set_chunked_content_provider(
                "text/event-stream", [&registry, id, next, heartbeat](std::size_t, httplib::DataSink& sink) {
                    if (registry.stopping()) {
                        sink.done();
                        return true;
                    }
                    bool finished = false;
                    auto events = registry.events_since(id, *next, heartbeat, finished);
                    if (events.empty() && !finished) {
                        std::string beat = ": heartbeat\n\n";
                        return sink.write(beat.data(), beat.size());
                    }
                    for (const auto& e : events) {
                        std::string frame = sse_frame(e, id + ":" + std::to_string((*next)++));
                        if (!sink.write(frame.data(), frame.size())) return false;
                    }
                    if (finished) sink.done();
                    return true;
                });
            return;
        }
        auto next = std::make_shared<std::size_t>(registry.log_size());
        res.set_chunked_content_provider(
            "text/event-stream", [&registry, next, heartbeat](std::size_t, httplib::DataSink& sink) {
                if (registry.stopping()) {
                    sink.done();
                    return true;
                }
                auto entries = registry.log_since(*next, heartbeat);
                if (entries.empty()) {
                    std::string beat = ": heartbeat\n\n";
                    return sink.write(beat.data(), beat.size());
                }
                for (const auto& entry : entries) {
                    std::string frame = sse_frame(entry.event, entry.workflow_id + ":" + std::to_string((*next)++));
                    if (!sink.write(frame.data(), frame.size())) return false;
                }
                return true;
            });
    });
}

}  // namespace genius::service
