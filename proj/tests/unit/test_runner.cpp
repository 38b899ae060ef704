#include <doctest.h>

#include <filesystem>

#include "genius/runner.hpp"
#include "support.hpp"

using namespace genius::runner;
using nlohmann::json;

namespace {

const char* kGood = R"(&CONTROL
  calculation = 'scf'
/
&SYSTEM
  ibrav = 0, nat = 1, ntyp = 1, ecutwfc = 30.0
/
&ELECTRONS
/
ATOMIC_SPECIES
  Cu 63.546 Cu.upf
ATOMIC_POSITIONS crystal
  Cu 0.0 0.0 0.0
K_POINTS automatic
  4 4 4 0 0 0
CELL_PARAMETERS angstrom
  0.0 1.8 1.8
  1.8 0.0 1.8
  1.8 1.8 0.0
)";

std::filesystem::path scratch() {
    auto p = std::filesystem::temp_directory_path() / ("genius-runner-" + std::to_string(::getpid()));
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("fault script parsing") {
    auto s = parse_fault_script(json::array({"fail", "pass", "fail"}));
    REQUIRE(s.size() == 3);
    CHECK(s[0].on_call == 1);
    CHECK(s[0].fail);
    CHECK_FALSE(s[1].fail);
    CHECK(s[2].on_call == 3);
    auto r = parse_fault_script(json::parse(R"([{"on_call": 4, "outcome": "fail", "crash_text": "boom"}])"));
    CHECK(r[0].on_call == 4);
    CHECK(r[0].crash_text == "boom");
    CHECK_THROWS(parse_fault_script(json::array({"maybe"})));
    CHECK_THROWS(parse_fault_script(json::parse(R"([{"on_call": 0, "outcome": "fail"}])")));
}

TEST_CASE("simulated runner follows the script, then validates") {
    SimulatedRunner r(testsupport::graph(), parse_fault_script(json::array({"fail"})));
    auto dir = scratch();
    auto first = r.execute(kGood, dir);
    CHECK_FALSE(first.success());
    REQUIRE(first.crash_text);
    CHECK(std::filesystem::exists(dir / "CRASH"));
    auto second = r.execute(kGood, dir);
    CHECK(second.success());
    CHECK(r.calls() == 2);

    std::string typo = kGood;
    typo.replace(typo.find("ecutwfc"), 7, "ecutwfcc");
    auto third = r.execute(typo, dir);
    CHECK_FALSE(third.success());
    CHECK(third.crash_text->find("ecutwfcc") != std::string::npos);
    auto garbage = r.execute("&CONTROL\n", dir);
    CHECK_FALSE(garbage.success());
    std::filesystem::remove_all(dir);
}

TEST_CASE("crash parsing") {
    auto text = crash_report("cell_base_init", 2, "ibrav=0: must read cell parameters");
    CHECK(crash_routine(text) == "cell_base_init");
    CHECK(crash_message(text).find("must read cell parameters") != std::string::npos);
    CHECK(crash_routine(" from read_namelists : error # 19\n bad ecutwfc") == "read_namelists");
    CHECK_FALSE(crash_routine("nothing useful"));

    auto d = parse_crash(text, nullptr, {}, &testsupport::graph());
    CHECK(d.routine == "cell_base_init");
    CHECK(std::find(d.keywords.begin(), d.keywords.end(), "cell_base_init") != d.keywords.end());
    CHECK(std::find(d.keywords.begin(), d.keywords.end(), "ibrav") != d.keywords.end());

    auto gw = testsupport::scripted_gateway(
        {{"entries", json::array({{{"template", "error_keywords"}, {"response", {{"keywords", {"CELL_PARAMETERS"}}}}}})}});
    auto with_llm = parse_crash(text, gw.get(), testsupport::model(), &testsupport::graph());
    CHECK(std::find(with_llm.keywords.begin(), with_llm.keywords.end(), "CELL_PARAMETERS") != with_llm.keywords.end());

    auto words = fallback_keywords("the cutoff is too low for the pseudopotential");
    CHECK(std::find(words.begin(), words.end(), "the") == words.end());
    CHECK(std::find(words.begin(), words.end(), "cutoff") != words.end());
}

TEST_CASE("external runner reports a missing binary") {
    ExternalRunner r({"/nonexistent/pw.x", {"-in", "pw.in"}, std::chrono::seconds(5)});
    auto dir = scratch();
    RunOutcome out;
    bool threw = false;
    try {
        out = r.execute(kGood, dir);
    } catch (const RunnerError&) {
        threw = true;
    }
    CHECK((threw || !out.success()));
    std::filesystem::remove_all(dir);
}
