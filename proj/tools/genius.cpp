#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "genius/analytics.hpp"
#include "genius/kg.hpp"
#include "genius/service.hpp"
#include "genius/workflow.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace genius;

namespace {

std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return json::parse(in);
}

std::vector<workflow::TimelineEvent> read_timeline(const fs::path& dir) {
    std::ifstream in(dir / "timeline.jsonl");
    if (!in) throw std::runtime_error("no timeline in " + dir.string());
    std::vector<workflow::TimelineEvent> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(workflow::TimelineEvent::from_json(json::parse(line)));
    return out;
}

const char* status_color(workflow::EventStatus s) {
    switch (s) {
        case workflow::EventStatus::PENDING: return "\033[33m";
        case workflow::EventStatus::SUCCESS: return "\033[32m";
        case workflow::EventStatus::RETRY: return "\033[90m";
        case workflow::EventStatus::ERROR: return "\033[31m";
    }
    return "";
}

void print_timeline(const std::vector<workflow::TimelineEvent>& events, bool plot, bool color) {
    if (plot) {
        for (const auto& e : events) std::cout << (color ? status_color(e.status) : "") << "●" << (color ? "\033[0m" : "");
        std::cout << "\n";
        std::cout << "legend: PENDING orange, SUCCESS green, RETRY gray, ERROR red\n";
        return;
    }
    const double t0 = events.empty() ? 0.0 : events.front().timestamp;
    for (const auto& e : events) {
        std::printf("%8.3fs  %-28s %-8s", e.timestamp - t0, std::string(workflow::to_string(e.state)).c_str(),
                    std::string(workflow::to_string(e.status)).c_str());
        if (e.model_ref) std::printf(" [%s]", e.model_ref->model_id.c_str());
        if (!e.detail.empty()) std::printf(" %s", e.detail.substr(0, 100).c_str());
        std::printf("\n");
    }
}

std::shared_ptr<const service::Environment> load_env(const std::string& resources) {
    auto paths = resources.empty() ? service::ResourcePaths::defaults() : service::ResourcePaths::under(resources);
    return std::make_shared<const service::Environment>(paths);
}

int run_payload(const service::WorkflowPayload& payload, const service::Environment& env,
                const std::optional<fs::path>& data_dir, bool quiet, json* summary_out = nullptr) {
    auto prepared = service::prepare(payload, env);
    workflow::RunOptions options;
    options.data_dir = data_dir;
    if (!quiet)
        options.on_event = [](const workflow::TimelineEvent& e, const workflow::WorkflowRun&) {
            std::cerr << workflow::to_string(e.state) << " " << workflow::to_string(e.status)
                      << (e.detail.empty() ? "" : " " + e.detail.substr(0, 100)) << "\n";
        };
    auto run = service::execute(prepared, env, options);
    auto summary = run.summary();
    if (summary_out) *summary_out = summary;
    if (!quiet) {
        std::cout << summary.dump(2) << "\n";
        if (run.outcome == workflow::Outcome::success) std::cout << "\n" << run.current_protocol;
    }
    return run.outcome == workflow::Outcome::success ? 0 : 1;
}

std::atomic<httplib::Server*> g_server{nullptr};

void on_signal(int) {
    if (auto* s = g_server.load()) s->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turns free-text DFT requests into validated pw.x inputs"};
    app.require_subcommand(1);
    std::string resources;
    app.add_option("--resources", resources, "data directory with kg/, structures/ and catalogs/");

    // run
    auto* run_cmd = app.add_subcommand("run", "run one workflow to completion");
    std::string prompt, hierarchy = "worker-small,worker-large,referee", backend = "simulated", target_api = "scripted";
    std::string catalog_file, fault_script, scenario_file, run_data_dir, pw_command;
    int retries = 3;
    run_cmd->add_option("--prompt", prompt, "calculation request");
    run_cmd->add_option("--hierarchy", hierarchy, "comma-separated models, weakest first");
    run_cmd->add_option("--backend", backend, "simulated or external")->check(CLI::IsMember({"simulated", "external"}));
    run_cmd->add_option("--target-api", target_api, "provider id for bare model names");
    run_cmd->add_option("--catalog", catalog_file, "scripted response catalog (JSON)");
    run_cmd->add_option("--fault-script", fault_script, "runner fault script as JSON, e.g. '[\"fail\",\"pass\"]'");
    run_cmd->add_option("--scenario", scenario_file, "scenario file; overrides prompt, hierarchy and catalog");
    run_cmd->add_option("--data-dir", run_data_dir, "where to persist run folders");
    run_cmd->add_option("--pw-command", pw_command, "pw.x command line for the external backend");
    run_cmd->add_option("--retries", retries, "retries per model")->check(CLI::PositiveNumber);

    // scenarios
    auto* sc_cmd = app.add_subcommand("scenarios", "run every scenario in a directory and check expectations");
    std::string sc_dir, sc_data_dir;
    sc_cmd->add_option("--dir", sc_dir, "scenario directory (default data/scenarios)");
    sc_cmd->add_option("--data-dir", sc_data_dir, "persist run folders here");

    // status / timeline
    auto* status_cmd = app.add_subcommand("status", "show a persisted run's state");
    auto* tl_cmd = app.add_subcommand("timeline", "print a persisted run's timeline");
    std::string wf_id, lookup_dir = env_or("GENIUS_DATA_DIR", "genius-data");
    bool plot = false, no_color = false;
    for (auto* c : {status_cmd, tl_cmd}) {
        c->add_option("id", wf_id, "workflow id")->required();
        c->add_option("--data-dir", lookup_dir, "run folder root");
    }
    tl_cmd->add_flag("--plot", plot, "one colored dot per event");
    tl_cmd->add_flag("--no-color", no_color, "plain output");

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "start the HTTP service");
    std::string host = "0.0.0.0", serve_data_dir = env_or("GENIUS_DATA_DIR", "");
    int port = std::atoi(env_or("GENIUS_PORT", "8080").c_str());
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--port", port);
    serve_cmd->add_option("--data-dir", serve_data_dir);

    // analyze
    auto* an_cmd = app.add_subcommand("analyze", "success statistics, decay fit and SOM reports");
    std::string logs_dir, embeddings_file, fractions_file, out_dir = "reports";
    analytics::SomConfig som_cfg;
    an_cmd->add_option("--logs", logs_dir, "directory of run folders or result documents");
    an_cmd->add_option("--embeddings", embeddings_file, "one unit vector per line, comma-separated");
    an_cmd->add_option("--fractions", fractions_file, "attempt,fraction CSV; defaults to the histogram from --logs");
    an_cmd->add_option("--out", out_dir, "output directory");
    an_cmd->add_option("--som-iterations", som_cfg.iterations)->check(CLI::PositiveNumber);
    an_cmd->add_option("--som-batch", som_cfg.batch_size)->check(CLI::PositiveNumber);
    an_cmd->add_option("--seed", som_cfg.seed);

    auto* kg_cmd = app.add_subcommand("kg-stats", "knowledge graph counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            auto env = load_env(resources);
            service::WorkflowPayload payload;
            if (!scenario_file.empty()) {
                payload = service::scenario_payload(read_json(scenario_file));
            } else {
                if (prompt.empty()) throw CLI::ValidationError("--prompt", "required unless --scenario is given");
                json body = {{"calculation_prompt", prompt},
                             {"gen_model_hierarchy", split_commas(hierarchy)},
                             {"target_api", target_api}};
                json pc = {{"backend", backend}, {"retries_per_model", retries}};
                if (!catalog_file.empty()) pc["catalog"] = read_json(catalog_file);
                if (!fault_script.empty()) pc["fault_script"] = json::parse(fault_script);
                if (!pw_command.empty()) {
                    std::istringstream ss(pw_command);
                    std::vector<std::string> argv_words;
                    for (std::string w; ss >> w;) argv_words.push_back(w);
                    pc["pw_command"] = argv_words;
                }
                body["project_config"] = pc;
                payload = service::WorkflowPayload::parse(body);
            }
            std::optional<fs::path> dd;
            if (!run_data_dir.empty()) dd = run_data_dir;
            return run_payload(payload, *env, dd, false);
        }
        if (*sc_cmd) {
            auto env = load_env(resources);
            fs::path dir = sc_dir.empty() ? (resources.empty() ? fs::path(GENIUS_SOURCE_DIR) / "data" : fs::path(resources)) / "scenarios"
                                          : fs::path(sc_dir);
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(dir))
                if (e.path().extension() == ".json") files.push_back(e.path());
            std::sort(files.begin(), files.end());
            std::optional<fs::path> dd;
            if (!sc_data_dir.empty()) dd = sc_data_dir;
            int mismatches = 0;
            for (const auto& f : files) {
                auto scenario = read_json(f);
                json summary;
                run_payload(service::scenario_payload(scenario), *env, dd, true, &summary);
                bool ok = true;
                const json expect = scenario.value("expect", json::object());
                for (const auto& [k, v] : expect.items()) ok = ok && summary.value(k, json()) == v;
                if (!ok) ++mismatches;
                std::printf("%-4s %-28s status=%-8s attempts=%d model_index=%d label=%s\n", ok ? "ok" : "DIFF",
                            scenario.value("name", f.stem().string()).c_str(),
                            summary.value("status", "?").c_str(), summary.value("total_attempts", -1),
                            summary.value("model_index", -1), summary.value("complexity_label", "?").c_str());
            }
            return mismatches == 0 ? 0 : 1;
        }
        if (*status_cmd) {
            fs::path dir = fs::path(lookup_dir) / wf_id;
            if (fs::exists(dir / "result.json")) {
                auto r = read_json(dir / "result.json");
                std::cout << json{{"workflow_id", wf_id}, {"state", r.value("final_state", "?")},
                                  {"total_attempts", r.value("total_attempts", 0)}, {"model_index", r.value("model_index", 0)}}
                                 .dump(2)
                          << "\n";
                return 0;
            }
            auto events = read_timeline(dir);
            std::cout << json{{"workflow_id", wf_id},
                              {"state", events.empty() ? "Entry" : std::string(workflow::to_string(events.back().state))}}
                             .dump(2)
                      << "\n";
            return 0;
        }
        if (*tl_cmd) {
            print_timeline(read_timeline(fs::path(lookup_dir) / wf_id), plot, !no_color);
            return 0;
        }
        if (*serve_cmd) {
            auto env = load_env(resources);
            service::ServiceConfig cfg;
            if (!serve_data_dir.empty()) cfg.data_dir = serve_data_dir;
            service::Registry registry(env, cfg);
            httplib::Server server;
            service::install_routes(server, registry);
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on " << host << ":" << port << "\n";
            if (!server.listen(host, port)) {
                std::cerr << "cannot listen on " << host << ":" << port << "\n";
                return 1;
            }
            registry.shutdown();
            return 0;
        }
        if (*an_cmd) {
            analytics::ReportInputs inputs;
            if (!logs_dir.empty()) {
                inputs.aggregate = analytics::aggregate_log_dir(logs_dir);
                std::cout << "success stats: " << inputs.aggregate->stats.to_json().dump() << "\n";
                if (inputs.aggregate->skipped) std::cerr << "skipped " << inputs.aggregate->skipped << " documents\n";
            }
            if (!fractions_file.empty())
                inputs.fit_points = analytics::read_fractions_csv(fractions_file);
            else if (inputs.aggregate)
                inputs.fit_points = inputs.aggregate->success_fractions();
            if (inputs.fit_points.size() >= 4) {
                inputs.fit = analytics::fit_decay(inputs.fit_points);
                std::cout << "decay fit: " << inputs.fit->to_json().dump() << "\n";
            } else if (!inputs.fit_points.empty()) {
                std::cerr << "decay fit skipped: " << inputs.fit_points.size() << " points, need 4\n";
            }
            if (!embeddings_file.empty()) {
                inputs.som = analytics::train_som(analytics::read_embeddings(embeddings_file), som_cfg);
                std::cout << "som: QE " << inputs.som->quantization_error << " TE " << inputs.som->topological_error << "\n";
            }
            for (const auto& p : analytics::emit_reports(inputs, out_dir)) std::cout << "wrote " << p.string() << "\n";
            return 0;
        }
        if (*kg_cmd) {
            auto env = load_env(resources);
            auto s = kg::graph_stats(env->graph());
            std::cout << json{{"nodes", s.node_count}, {"edges", s.edge_count}, {"conditions", s.condition_count},
                              {"warnings", s.warnings}}
                             .dump(2)
                      << "\n";
            return s.warnings.empty() ? 0 : 1;
        }
    } catch (const service::PayloadError& e) {
        for (const auto& [field, msg] : e.fields()) std::cerr << field << ": " << msg << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
