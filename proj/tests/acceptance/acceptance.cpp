// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../common/random_template.hpp"
#include "../unit/support.hpp"
#include "genius/analytics.hpp"
#include "genius/protocol.hpp"
#include "genius/retrieval.hpp"
#include "genius/service.hpp"

using namespace genius;
using nlohmann::json;

namespace {

struct Result {
    bool ok = true;
    std::string detail;
};

// Collects the first failure message; later checks still run so the detail stays short.
struct Checker {
    Result r;
    void check(bool cond, const std::string& what) {
        if (!cond && r.ok) {
            r.ok = false;
            r.detail = what;
        }
    }
    void note(const std::string& s) {
        if (r.ok) r.detail = s;
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1e", v);
    return buf;
}

service::Environment& env() {
    static service::Environment e(service::ResourcePaths::under(testsupport::data_dir()));
    return e;
}

workflow::WorkflowRun run_payload(const service::WorkflowPayload& payload) {
    auto prepared = service::prepare(payload, env());
    return service::execute(prepared, env());
}

json scenario(const std::string& file) { return testsupport::read_json(testsupport::data_dir() / "scenarios" / file); }

Result success_identity() {
    Checker c;
    auto s = analytics::SuccessStats::from_counts(295, 235, 42);
    c.check(std::abs(s.p_s - 0.7966) <= 0.0005, "p_s = " + fmt(s.p_s));
    c.check(std::abs(s.p_zs - 0.1424) <= 0.0005, "p_zs = " + fmt(s.p_zs));
    c.check(s.p_aeh_given_not_zs && std::abs(*s.p_aeh_given_not_zs - 0.7628) <= 0.0005, "p_aeh|not zs off");
    double recomposed = s.p_zs + (1 - s.p_zs) * s.p_aeh_given_not_zs.value_or(0);
    c.check(std::abs(recomposed - s.p_s) <= 1e-12, "identity residual " + std::to_string(recomposed - s.p_s));
    c.note("(" + fmt(s.p_s) + ", " + fmt(s.p_zs) + ", " + fmt(s.p_aeh_given_not_zs.value_or(0)) + ")");
    return c.r;
}

Result gamma_ablation() {
    Checker c;
    auto s = analytics::SuccessStats::from_counts(295, 235, 42);
    const double expected[] = {0.7966, 0.56, 0.43};
    const double gammas[] = {1.0, 1.5, 2.0};
    std::string values;
    for (int i = 0; i < 3; ++i) {
        double q = analytics::q_only_success(s, gammas[i]);
        values += (i ? ", " : "") + fmt(q);
        c.check(std::abs(q - expected[i]) <= 0.01, "q(" + fmt(gammas[i], 1) + ") = " + fmt(q));
    }
    double worst = 0;
    for (double g : {1.1, 1.5, 2.0, 5.0}) {
        const double h = 1e-5;
        double fd = (analytics::q_only_success(s, g + h) - analytics::q_only_success(s, g - h)) / (2 * h);
        worst = std::max(worst, std::abs(fd - analytics::q_only_sensitivity(s, g)));
    }
    c.check(worst <= 1e-6, "sensitivity vs finite difference " + sci(worst));
    c.note("q = " + values + "; max |dq - fd| = " + sci(worst));
    return c.r;
}

Result decay_fit() {
    Checker c;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> A(2, 30), b(0.1, 1.5), C(0.5, 10);
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const double a = A(rng), bb = b(rng), cc = C(rng);
        std::vector<std::pair<double, double>> pts;
        for (int x = 0; x < 10; ++x) pts.emplace_back(x, a * std::exp(-bb * x) + cc);
        auto f = analytics::fit_decay(pts);
        double rel = std::max({std::abs(f.A - a) / a, std::abs(f.b - bb) / bb, std::abs(f.C - cc) / cc});
        worst = std::max(worst, rel);
    }
    c.check(worst <= 1e-6, "synthetic relative error " + sci(worst));

    auto pts = analytics::read_fractions_csv(testsupport::data_dir() / "reference" / "attempt_success_fractions.csv");
    auto f = analytics::fit_decay(pts);
    c.check(std::abs(f.A - 11.1) <= 2.0, "A = " + fmt(f.A));
    c.check(std::abs(f.b - 0.46) <= 0.15, "b = " + fmt(f.b));
    c.check(std::abs(f.C - 7.0) <= 1.5, "C = " + fmt(f.C));
    c.check(f.rmse <= 3.0, "rmse = " + fmt(f.rmse));
    c.note("synthetic worst rel " + sci(worst) + "; shipped data A=" + fmt(f.A, 3) + " b=" + fmt(f.b, 3) +
           " C=" + fmt(f.C, 3) + " rmse=" + fmt(f.rmse, 3));
    return c.r;
}

Result retry_matrix() {
    Checker c;
    auto base = scenario("01_si_scf.json");
    for (int k = 0; k <= 12; ++k) {
        auto sc = base;
        sc["retries_per_model"] = 3;
        sc["hierarchy"] = {"worker-small", "worker-large", "referee"};
        sc["fault_script"] = json::array();
        for (int i = 0; i < k; ++i) sc["fault_script"].push_back("fail");
        auto run = run_payload(service::scenario_payload(sc));
        const std::string tag = "k=" + std::to_string(k) + ": ";
        if (k <= 8) {
            c.check(run.outcome == workflow::Outcome::success, tag + "expected success");
            c.check(run.total_attempts == k, tag + "total_attempts " + std::to_string(run.total_attempts));
            c.check(run.model_index == k / 3, tag + "model_index " + std::to_string(run.model_index));
        } else {
            c.check(run.outcome == workflow::Outcome::failure, tag + "expected failure");
            c.check(run.total_attempts == 9, tag + "total_attempts " + std::to_string(run.total_attempts));
        }
    }
    c.note("k = 0..8 succeed with total_attempts = k, k = 9..12 fail");
    return c.r;
}

Result pds2_end_to_end() {
    Checker c;
    auto sc = scenario("00_pds2_b3lyp_relax.json");
    auto prompt = sc["prompt"].get<std::string>();
    c.check(prompt.find("PdS2") != std::string::npos && prompt.find("B3LYP") != std::string::npos, "prompt content");
    auto run = run_payload(service::scenario_payload(sc));
    c.check(run.outcome == workflow::Outcome::success, "run did not finish: " + run.error);
    try {
        auto doc = protocol::parse_input(run.current_protocol);
        auto report = protocol::validate_static(doc, env().graph());
        c.check(!report.has_errors(), "validate_static errors: " + report.to_json().dump());
        const auto* kp = doc.card("K_POINTS");
        c.check(kp && kp->option == "automatic" && kp->rows.size() == 1 && kp->rows[0].size() >= 3 &&
                    kp->rows[0][0] == "7" && kp->rows[0][1] == "7" && kp->rows[0][2] == "2",
                "K_POINTS mesh is not 7 7 2");
        const auto* functional = doc.get("SYSTEM", "input_dft");
        c.check(functional && std::get<std::string>(*functional) == "B3LYP", "input_dft missing");
    } catch (const std::exception& e) {
        c.check(false, std::string("rendered input does not parse: ") + e.what());
    }
    c.note("relax input parses, 0 validation errors, K_POINTS 7 7 2");
    return c.r;
}

Result round_trip() {
    Checker c;
    std::mt19937_64 rng(424242);
    auto s = materials::standardize(materials::Structure::from_json(
        testsupport::read_json(testsupport::data_dir() / "structures" / "pds2_two_d.json")));
    int ok = 0;
    for (int i = 0; i < 1000; ++i) {
        auto t = testsupport::random_template(env().graph(), rng);
        try {
            check_template(t, env().graph());
            auto doc = protocol::build_document(t, s);
            auto back = protocol::parse_input(protocol::render_document(doc));
            std::string why;
            bool same = back == doc && testsupport::template_values_present(t, back, &why);
            c.check(same, "template " + std::to_string(i) + " differs after round trip " + why);
            ok += same;
        } catch (const std::exception& e) {
            c.check(false, "template " + std::to_string(i) + ": " + e.what());
        }
    }
    c.note(std::to_string(ok) + "/1000 templates identical after render and parse");
    return c.r;
}

Result retrieval_checks() {
    Checker c;
    for (int n = 1; n <= 20; ++n) {
        auto g = kg::KnowledgeGraph::load(testsupport::tiny_graph(n));
        auto hits = retrieval::keyword_search(g, {"cutoff"});
        auto want = static_cast<std::size_t>(std::ceil(0.7 * n - 1e-12));
        c.check(hits.size() == want, "N=" + std::to_string(n) + " gave " + std::to_string(hits.size()));
    }
    auto ref = testsupport::read_json(testsupport::data_dir() / "reference" / "fnv_vectors.json");
    std::size_t cases = 0;
    for (const auto& k : ref["cases"]) {
        auto text = k["text"].get<std::string>();
        c.check(std::to_string(retrieval::fnv1a64(text)) == k["fnv1a64"].get<std::string>(), "hash of '" + text + "'");
        auto v = retrieval::vectorize(text);
        bool same = v.entries.size() == k["entries"].size();
        for (std::size_t i = 0; same && i < v.entries.size(); ++i)
            same = v.entries[i].first == k["entries"][i][0].get<std::uint32_t>() &&
                   v.entries[i].second == k["entries"][i][1].get<std::int32_t>();
        c.check(same, "vector of '" + text + "'");
        ++cases;
    }
    c.check(cases > 0, "no reference vectors");
    c.note("ceil(0.7N) for N = 1..20; " + std::to_string(cases) + " pinned vectors bit-exact");
    return c.r;
}

Result som_properties() {
    Checker c;
    analytics::HexGrid grid(10, 10);
    c.check(grid.size() == 100, "grid size");
    for (std::size_t u = 0; u < grid.size(); ++u) {
        auto [r, col] = grid.offset(u);
        if (r > 0 && r < 9 && col > 0 && col < 9) c.check(grid.neighbors()[u].size() == 6, "interior degree");
    }

    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0.0, 0.05);
    std::vector<std::vector<double>> data;
    for (int i = 0; i < 500; ++i) {
        std::vector<double> v(8);
        for (auto& x : v) x = noise(rng);
        v[i % 2 == 0 ? 0 : 4] += 1.0;
        double norm = 0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (auto& x : v) x /= norm;
        data.push_back(std::move(v));
    }
    analytics::SomConfig cfg;
    cfg.iterations = 5000;
    cfg.seed = 7;
    auto model = analytics::train_som(data, cfg);
    c.check(model.checkpoints.size() == 3, "expected three checkpoints");
    for (std::size_t i = 1; i < model.checkpoints.size(); ++i)
        c.check(model.checkpoints[i].second <= model.checkpoints[i - 1].second + 1e-12, "quantization error increased");
    c.check(model.topological_error < 0.1, "topological error " + fmt(model.topological_error));
    std::string qe;
    for (const auto& [it, e] : model.checkpoints) qe += (qe.empty() ? "" : " -> ") + fmt(e);
    c.note("QE " + qe + ", TE " + fmt(model.topological_error));
    return c.r;
}

Result service_conformance() {
    Checker c;
    auto shared = std::shared_ptr<const service::Environment>(&env(), [](const service::Environment*) {});
    service::Registry registry(shared, service::ServiceConfig{std::nullopt, std::chrono::milliseconds(100)});
    httplib::Server server;
    service::install_routes(server, registry);
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    {
        httplib::Client client("127.0.0.1", port);
        client.set_read_timeout(std::chrono::seconds(30));

        auto bad = client.Post("/workflow/", R"({"calculation_prompt": ""})", "application/json");
        c.check(bad && bad->status == 400, "invalid payload not rejected with 400");

        auto payload = service::scenario_payload(scenario("13_ni_magnetic.json")).to_json();
        auto posted = client.Post("/workflow/", payload.dump(), "application/json");
        c.check(posted && posted->status == 202, "POST /workflow/ did not return 202");
        std::string id = posted ? json::parse(posted->body).value("workflow_id", "") : "";

        std::string stream;
        auto logs = client.Get("/logs?workflow_id=" + id, [&](const char* d, std::size_t n) {
            stream.append(d, n);
            return true;
        });
        c.check(logs && logs->status == 200, "GET /logs failed");
        c.check(registry.wait(id, std::chrono::seconds(30)), "run did not finish");

        auto status = client.Get("/workflow-status/" + id);
        c.check(status && status->status == 200 && json::parse(status->body)["state"] == "Finished", "status route");
        auto results = client.Get("/results/" + id);
        c.check(results && results->status == 200 && json::parse(results->body)["total_attempts"] == 3, "results route");
        auto timeline = client.Get("/timeline/" + id);
        c.check(timeline && timeline->status == 200, "timeline route");
        c.check(client.Get("/workflow-status/unknown")->status == 404, "unknown id not 404");

        if (timeline && timeline->status == 200) {
            auto events = json::parse(timeline->body)["events"];
            std::size_t pos = 0, i = 0;
            bool prefix = true;
            while ((pos = stream.find("data: ", pos)) != std::string::npos) {
                auto end = stream.find('\n', pos);
                auto e = json::parse(stream.substr(pos + 6, end - pos - 6));
                prefix = prefix && i < events.size() && e == events[i];
                ++i;
                pos = end;
            }
            c.check(prefix && i > 0, "SSE stream is not a prefix of the timeline");
            c.note("5 routes per contract; SSE delivered " + std::to_string(i) + "/" + std::to_string(events.size()) +
                   " events in timeline order");
        }
    }
    registry.shutdown();
    server.stop();
    thread.join();
    return c.r;
}

Result scenario_suite() {
    Checker c;
    std::vector<json> summaries;
    int zero_shot = 0, retried = 0, switched = 0, failed = 0, mismatched = 0;
    std::set<int> retry_counts;
    for (const auto& entry : std::filesystem::directory_iterator(testsupport::data_dir() / "scenarios")) {
        auto sc = testsupport::read_json(entry.path());
        auto run = run_payload(service::scenario_payload(sc));
        auto summary = run.summary();
        const json expect = sc["expect"];
        bool match = expect.contains("status");
        for (const auto& [key, value] : expect.items()) match = match && summary.value(key, json()) == value;
        c.check(match, sc["name"].get<std::string>() + " diverged: " + summary.dump());
        mismatched += !match;
        if (run.outcome == workflow::Outcome::success) {
            if (run.total_attempts == 0) ++zero_shot;
            else {
                ++retried;
                retry_counts.insert(run.total_attempts);
            }
            if (run.model_switches > 0) ++switched;
        } else {
            ++failed;
        }
        summaries.push_back(summary);
    }
    c.check(summaries.size() >= 20, "only " + std::to_string(summaries.size()) + " scenarios");
    c.check(zero_shot > 0 && switched > 0 && failed > 0, "path coverage incomplete");
    for (int k = 1; k <= 8; ++k) c.check(retry_counts.count(k) == 1, "no scenario succeeds after " + std::to_string(k) + " retries");

    auto aggregate = analytics::aggregate_logs(summaries);
    c.check(aggregate.stats.total == summaries.size(), "aggregate dropped runs");
    analytics::ReportInputs inputs;
    inputs.aggregate = aggregate;
    inputs.fit_points = aggregate.success_fractions();
    if (inputs.fit_points.size() >= 4) inputs.fit = analytics::fit_decay(inputs.fit_points);
    auto out = std::filesystem::temp_directory_path() / ("genius-acceptance-" + std::to_string(::getpid()));
    auto written = analytics::emit_reports(inputs, out);
    c.check(std::filesystem::exists(out / "stacked_bars.json") && std::filesystem::exists(out / "success_stats.json"),
            "reports missing");
    std::filesystem::remove_all(out);
    c.note(std::to_string(summaries.size()) + " scenarios (" + std::to_string(zero_shot) + " zero-shot, " +
           std::to_string(retried) + " retried, " + std::to_string(switched) + " model switch, " + std::to_string(failed) +
           " failed); p_s=" + fmt(aggregate.stats.p_s, 3) + ", " + std::to_string(written.size()) + " report files");
    return c.r;
}

struct Criterion {
    const char* name;
    double budget_s;  // 0: no runtime bound
    std::function<Result()> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"success-probability identity", 1, success_identity},
        {"gamma ablation", 1, gamma_ablation},
        {"decay fit", 5, decay_fit},
        {"retry matrix k=0..12", 10, retry_matrix},
        {"PdS2 end-to-end scenario", 5, pds2_end_to_end},
        {"render/parse round trip x1000", 30, round_trip},
        {"retrieval count and FNV vectors", 5, retrieval_checks},
        {"SOM properties", 60, som_properties},
        {"service conformance", 0, service_conformance},
        {"scenario suite feeds analytics", 0, scenario_suite},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = cr.body();
        } catch (const std::exception& e) {
            r = {false, std::string("threw: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.ok && cr.budget_s > 0 && secs > cr.budget_s) {
            r.ok = false;
            r.detail = "took " + fmt(secs, 2) + " s, budget " + fmt(cr.budget_s, 0) + " s";
        }
        failures += !r.ok;
        std::printf("%s  %-34s %7.3f s  %s\n", r.ok ? "PASS" : "FAIL", cr.name, secs, r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
    return failures == 0 ? 0 : 1;
}
