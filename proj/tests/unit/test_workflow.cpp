#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "genius/prompts.hpp"
#include "genius/service.hpp"
#include "genius/workflow.hpp"
#include "support.hpp"

using namespace genius;
using namespace genius::workflow;
using nlohmann::json;

namespace {

service::Environment& env() {
    static service::Environment e(service::ResourcePaths::under(testsupport::data_dir()));
    return e;
}

WorkflowRun run_scenario(const std::string& file, RunOptions options = {}) {
    auto scenario = testsupport::read_json(testsupport::data_dir() / "scenarios" / file);
    auto prepared = service::prepare(service::scenario_payload(scenario), env());
    return service::execute(prepared, env(), std::move(options));
}

WorkflowRun at(State s, int attempts = 0, int model = 0) {
    WorkflowRun r;
    r.state = s;
    r.attempts_for_current_model = attempts;
    r.model_index = model;
    r.retries_per_model = 3;
    r.hierarchy_size = 3;
    return r;
}

}  // namespace

TEST_CASE("linear states advance on proceed only") {
    for (int i = 0; i <= static_cast<int>(State::QeInputGeneration); ++i) {
        auto s = static_cast<State>(i);
        CHECK(step(at(s), Trigger::proceed).state == static_cast<State>(i + 1));
        CHECK_THROWS_AS(step(at(s), Trigger::run_succeeded), ProtocolViolation);
        CHECK_THROWS_AS(step(at(s), Trigger::run_failed), ProtocolViolation);
    }
    CHECK_THROWS_AS(step(at(State::Entry), Trigger::stage_failed), ProtocolViolation);
    CHECK(step(at(State::MaterialsDb), Trigger::stage_failed).state == State::Failure);
}

TEST_CASE("run outcomes and retry decisions") {
    auto ok = step(at(State::QeRun), Trigger::run_succeeded);
    CHECK(ok.state == State::Finished);
    CHECK(ok.outcome == Outcome::success);
    CHECK_THROWS_AS(step(at(State::QeRun), Trigger::proceed), ProtocolViolation);

    auto failed = step(at(State::QeRun, 1), Trigger::run_failed);
    CHECK(failed.state == State::FailureDetected);
    CHECK(failed.attempts_for_current_model == 2);
    CHECK(failed.total_attempts == 1);

    CHECK(step(at(State::CheckRetries, 2), Trigger::proceed).state == State::AttemptCorrection);
    auto sw = step(at(State::CheckRetries, 3), Trigger::proceed);
    CHECK(sw.state == State::SwitchModel);
    CHECK(sw.model_index == 1);
    CHECK(sw.attempts_for_current_model == 0);
    CHECK(sw.model_switches == 1);
    CHECK(step(sw, Trigger::proceed).state == State::PrepareInputTemplate);
    auto last = step(at(State::CheckRetries, 3, 2), Trigger::proceed);
    CHECK(last.state == State::Failure);
    CHECK(last.outcome == Outcome::failure);
    CHECK(step(at(State::AttemptCorrection), Trigger::proceed).state == State::QeRun);
}

TEST_CASE("terminal states reject every trigger and abort fails") {
    for (auto s : {State::Finished, State::Failure})
        for (auto t : {Trigger::proceed, Trigger::run_succeeded, Trigger::run_failed, Trigger::stage_failed, Trigger::abort})
            CHECK_THROWS_AS(step(at(s), t), ProtocolViolation);
    auto a = step(at(State::EvaluateParameters), Trigger::abort);
    CHECK(a.state == State::Failure);
    CHECK(a.aborted);
}

TEST_CASE("state and status names round-trip") {
    for (std::size_t i = 0; i < kStateCount; ++i) {
        auto s = static_cast<State>(i);
        CHECK(parse_state(to_string(s)) == s);
    }
    CHECK(parse_status("RETRY") == EventStatus::RETRY);
    CHECK_FALSE(parse_state("Nope"));
    TimelineEvent e{12.5, State::QeRun, EventStatus::ERROR, "crash", llm::ModelRef{"scripted", "m", llm::Role::worker}};
    auto back = TimelineEvent::from_json(e.to_json());
    CHECK(back.state == e.state);
    CHECK(back.status == e.status);
    CHECK(back.model_ref == e.model_ref);
    CHECK(new_workflow_id().size() == 32);
    CHECK(new_workflow_id() != new_workflow_id());
}

TEST_CASE("zero-shot run persists its artefacts") {
    auto dir = std::filesystem::temp_directory_path() / ("genius-wf-" + std::to_string(::getpid()));
    RunOptions opt;
    opt.data_dir = dir;
    opt.workflow_id = "abc";
    auto run = run_scenario("01_si_scf.json", opt);
    CHECK(run.outcome == Outcome::success);
    CHECK(run.total_attempts == 0);
    CHECK(std::filesystem::exists(dir / "abc" / "result.json"));
    CHECK(std::filesystem::exists(dir / "abc" / "pw.in"));
    std::ifstream in(dir / "abc" / "timeline.jsonl");
    std::string line;
    std::size_t lines = 0;
    double last = 0;
    while (std::getline(in, line)) {
        auto e = TimelineEvent::from_json(json::parse(line));
        CHECK(e.timestamp >= last);
        last = e.timestamp;
        ++lines;
    }
    CHECK(lines == run.timeline.size());
    CHECK(testsupport::read_json(dir / "abc" / "result.json")["status"] == "success");
    std::filesystem::remove_all(dir);
}

TEST_CASE("failures retry, then switch models") {
    auto run = run_scenario("13_ni_magnetic.json");
    CHECK(run.outcome == Outcome::success);
    CHECK(run.total_attempts == 3);
    CHECK(run.model_index == 1);
    CHECK(run.model_switches == 1);
    bool switched = false;
    for (const auto& e : run.timeline) switched = switched || e.state == State::SwitchModel;
    CHECK(switched);
}

TEST_CASE("unknown material ends the run before any attempt") {
    auto run = run_scenario("21_unknown_material.json");
    CHECK(run.outcome == Outcome::failure);
    CHECK(run.total_attempts == 0);
    CHECK(run.error.find("MaterialsDb") != std::string::npos);
}

TEST_CASE("abort requests stop at a state boundary") {
    RunOptions opt;
    int events = 0;
    opt.on_event = [&](const TimelineEvent&, const WorkflowRun&) { ++events; };
    opt.abort_requested = [&] { return events >= 3; };
    auto run = run_scenario("01_si_scf.json", opt);
    CHECK(run.aborted);
    CHECK(run.outcome == Outcome::failure);
    CHECK(run.summary()["aborted"] == true);
}

TEST_CASE("correction context binds exactly four keys") {
    WorkflowRun run;
    run.request.raw_prompt = "scf of Si";
    run.current_protocol = "&CONTROL\n/\n";
    runner::ErrorDescriptor d{"cell_base_init", "ibrav=0: must read cell parameters", {"ibrav", "CELL_PARAMETERS"}};
    CHECK_THROWS(correction_context(run, d, testsupport::index()));
    run.state = State::AttemptCorrection;
    auto ctx = correction_context(run, d, testsupport::index());
    CHECK(ctx.size() == 4);
    for (const char* k : {"error", "docs", "protocol", "prompt"}) CHECK(ctx.contains(k));
    CHECK(ctx["docs"].get<std::string>().find("ibrav") != std::string::npos);
    CHECK(ctx["protocol"] == run.current_protocol);
    CHECK_NOTHROW(llm::render_prompt("error_correct", ctx));
}
