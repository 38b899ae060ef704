#include <doctest.h>

#include <httplib.h>

#include <thread>

#include "genius/service.hpp"
#include "support.hpp"

using namespace genius;
using namespace genius::service;
using nlohmann::json;

namespace {

struct Harness {
    std::shared_ptr<Environment> env = std::make_shared<Environment>(ResourcePaths::under(testsupport::data_dir()));
    Registry registry;
    httplib::Server server;
    int port = 0;
    std::thread thread;

    Harness() : registry(env, ServiceConfig{std::nullopt, std::chrono::milliseconds(50)}) {
        install_routes(server, registry);
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~Harness() {
        registry.shutdown();
        server.stop();
        thread.join();
    }
    httplib::Client client() const {
        httplib::Client c("127.0.0.1", port);
        c.set_read_timeout(std::chrono::seconds(20));
        return c;
    }
};

json scenario_body(const std::string& file) {
    return scenario_payload(testsupport::read_json(testsupport::data_dir() / "scenarios" / file)).to_json();
}

std::string submit(httplib::Client& c, const json& body) {
    auto res = c.Post("/workflow/", body.dump(), "application/json");
    REQUIRE(res);
    REQUIRE(res->status == 202);
    return json::parse(res->body)["workflow_id"];
}

}  // namespace

TEST_CASE("payload validation names every bad field") {
    Harness h;
    auto c = h.client();
    auto res = c.Post("/workflow/", R"({"gen_model_hierarchy": [], "model_config": {"worker": "x"}})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
    auto body = json::parse(res->body);
    CHECK(body["error"] == "invalid payload");
    CHECK(body["fields"].contains("calculation_prompt"));
    CHECK(body["fields"].contains("gen_model_hierarchy"));
    CHECK(body["fields"].contains("model_config"));
    CHECK(c.Post("/workflow/", "{not json", "application/json")->status == 400);

    ::unsetenv("GENIUS_API_KEY_ACME");
    auto cred = c.Post("/workflow/", json{{"calculation_prompt", "scf of Si"}, {"gen_model_hierarchy", {"acme/m1"}}}.dump(),
                       "application/json");
    CHECK(cred->status == 401);
    CHECK(json::parse(cred->body)["error"].get<std::string>().find("GENIUS_API_KEY_ACME") != std::string::npos);
}

TEST_CASE("unknown ids are 404") {
    Harness h;
    auto c = h.client();
    for (const char* path : {"/workflow-status/nope", "/results/nope", "/timeline/nope", "/logs?workflow_id=nope"})
        CHECK(c.Get(path)->status == 404);
    CHECK(c.Delete("/workflow/nope")->status == 404);
}

TEST_CASE("a run reports status, results, timeline and a matching event stream") {
    Harness h;
    auto c = h.client();
    auto id = submit(c, scenario_body("06_fe_spin_scf.json"));
    std::string stream;
    auto res = c.Get("/logs?workflow_id=" + id, [&](const char* data, std::size_t n) {
        stream.append(data, n);
        return true;
    });
    REQUIRE(res);
    CHECK(res->get_header_value("Content-Type").find("text/event-stream") != std::string::npos);
    REQUIRE(h.registry.wait(id, std::chrono::seconds(10)));

    auto status = json::parse(c.Get("/workflow-status/" + id)->body);
    CHECK(status["state"] == "Finished");
    auto result = c.Get("/results/" + id);
    CHECK(result->status == 200);
    auto rj = json::parse(result->body);
    CHECK(rj["status"] == "success");
    CHECK(rj["total_attempts"] == 1);
    CHECK(rj["input_text"].get<std::string>().find("K_POINTS") != std::string::npos);

    auto timeline = json::parse(c.Get("/timeline/" + id)->body)["events"];
    std::vector<json> streamed;
    std::size_t pos = 0;
    while ((pos = stream.find("data: ", pos)) != std::string::npos) {
        auto end = stream.find('\n', pos);
        streamed.push_back(json::parse(stream.substr(pos + 6, end - pos - 6)));
        pos = end;
    }
    REQUIRE(streamed.size() == timeline.size());
    for (std::size_t i = 0; i < streamed.size(); ++i) CHECK(streamed[i] == timeline[i]);
    CHECK(stream.find("id: " + id + ":0\n") != std::string::npos);

    CHECK(c.Delete("/workflow/" + id)->status == 200);
}

TEST_CASE("results are 409 while running and DELETE aborts") {
    Harness h;
    auto c = h.client();
    auto body = scenario_body("01_si_scf.json");
    body["project_config"]["backend"] = "external";
    body["project_config"]["pw_command"] = {"sleep", "1"};
    auto id = submit(c, body);
    auto early = c.Get("/results/" + id);
    CHECK(early->status == 409);
    auto del = c.Delete("/workflow/" + id);
    CHECK(del->status == 202);
    REQUIRE(h.registry.wait(id, std::chrono::seconds(20)));
    auto result = json::parse(c.Get("/results/" + id)->body);
    CHECK(result["aborted"] == true);
    CHECK(result["status"] == "failure");
}

TEST_CASE("global feed sends heartbeats when idle") {
    Harness h;
    auto c = h.client();
    std::string got;
    c.Get("/logs", [&](const char* data, std::size_t n) {
        got.append(data, n);
        return got.find(": heartbeat") == std::string::npos;
    });
    CHECK(got.find(": heartbeat\n\n") != std::string::npos);
}

TEST_CASE("graph export and CORS") {
    Harness h;
    auto c = h.client();
    auto res = c.Get("/kg.json");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    auto g = kg::KnowledgeGraph::load(std::string_view(res->body));
    CHECK(g.nodes().size() == testsupport::graph().nodes().size());
    CHECK(c.Options("/workflow/")->status == 204);
}
