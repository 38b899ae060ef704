#include <doctest.h>

#include <random>

#include "../common/random_template.hpp"
#include "genius/materials.hpp"
#include "genius/protocol.hpp"
#include "support.hpp"

using namespace genius;
using namespace genius::protocol;

namespace {

materials::Structure fixture(const std::string& name) {
    return materials::standardize(
        materials::Structure::from_json(testsupport::read_json(testsupport::data_dir() / "structures" / name)));
}

ProtocolTemplate scf_template() {
    ProtocolTemplate t;
    t.parameters = {
        {"K_POINTS", Value{std::string("4 4 4")}, kg::DataType::COMPOSITE, "", ""},
        {"calculation", Value{std::string("scf")}, kg::DataType::CHARACTER, "", "CONTROL"},
        {"ecutwfc", Value{30.0}, kg::DataType::REAL, "", "SYSTEM"},
        {"starting_magnetization", Value{0.5}, kg::DataType::REAL, "", "SYSTEM"},
    };
    return t;
}

const char* kSample = R"(! sample input
&control
   calculation = 'scf', prefix='si' ! trailing comment
/
&SYSTEM
  ibrav = 0, nat = 2, ntyp = 1
  ecutwfc = 30.0
  starting_magnetization(1) = 0.5
/
&ELECTRONS
  conv_thr = 1.0d-8
/
ATOMIC_SPECIES
  Si 28.085 Si.upf
ATOMIC_POSITIONS {crystal}
  Si 0.0 0.0 0.0
  Si 0.25 0.25 0.25
K_POINTS automatic
  4 4 4 0 0 0
CELL_PARAMETERS angstrom
  0.0 2.7 2.7
  2.7 0.0 2.7
  2.7 2.7 0.0
)";

}  // namespace

TEST_CASE("parse a hand-written input") {
    auto doc = parse_input(kSample);
    REQUIRE(doc.namelists.size() == 3);
    CHECK(doc.namelists[0].name == "CONTROL");
    CHECK(std::get<std::string>(*doc.get("CONTROL", "prefix")) == "si");
    CHECK(std::get<double>(*doc.get("ELECTRONS", "conv_thr")) == doctest::Approx(1e-8));
    CHECK(doc.get("SYSTEM", "starting_magnetization(1)") != nullptr);
    CHECK(doc.card("ATOMIC_POSITIONS")->option == "crystal");
    CHECK(doc.card("K_POINTS")->rows.at(0).size() == 6);
    auto report = validate_static(doc, testsupport::graph());
    CHECK_MESSAGE(!report.has_errors(), report.to_json().dump());
}

TEST_CASE("parse errors carry kind and line") {
    try {
        parse_input("&CONTROL\n calculation='scf'\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseErrorKind::unterminated_namelist);
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_input("&FOO\n/\n"), ParseError);
    CHECK_THROWS_AS(parse_input("&SYSTEM\n ecutwfc 30\n/\n"), ParseError);
    CHECK_THROWS_AS(parse_input("ATOMIC_SPECIES\n Si 28.0\n"), ParseError);
    CHECK_THROWS_AS(parse_input("hello\n"), ParseError);
}

TEST_CASE("occupations assignment is not mistaken for the card") {
    auto doc = parse_input("&SYSTEM\n  occupations = 'smearing'\n/\nOCCUPATIONS\n  1.0\n");
    CHECK(std::get<std::string>(*doc.get("SYSTEM", "occupations")) == "smearing");
    CHECK(doc.card("OCCUPATIONS") != nullptr);
}

TEST_CASE("build and render") {
    auto s = fixture("si_three_d.json");
    auto doc = build_document(scf_template(), s);
    CHECK(doc.namelists.size() == 3);
    CHECK(std::get<std::int64_t>(*doc.get("SYSTEM", "nat")) == 2);
    CHECK(doc.get("SYSTEM", "starting_magnetization(1)") != nullptr);
    CHECK(doc.card("K_POINTS")->option == "automatic");
    auto text = render_document(doc);
    CHECK(text.find("K_POINTS automatic\n  4 4 4 0 0 0\n") != std::string::npos);
    CHECK(parse_input(text) == doc);
    CHECK_FALSE(validate_static(doc, testsupport::graph()).has_errors());
}

TEST_CASE("relax adds IONS and vc-relax adds CELL") {
    auto s = fixture("si_three_d.json");
    auto t = scf_template();
    t.parameters[1].value = Value{std::string("vc-relax")};
    auto doc = build_document(t, s);
    CHECK(doc.namelist("IONS"));
    CHECK(doc.namelist("CELL"));
}

TEST_CASE("missing k-points or pseudopotential is a render error") {
    auto s = fixture("si_three_d.json");
    auto t = scf_template();
    t.parameters.erase(t.parameters.begin());
    CHECK_THROWS_AS(build_document(t, s), RenderError);
    s.pseudopotentials.clear();
    CHECK_THROWS_AS(build_document(scf_template(), s), RenderError);
}

TEST_CASE("k-points value forms") {
    auto s = fixture("si_three_d.json");
    auto t = scf_template();
    t.parameters[0].value = Value{std::string("gamma")};
    CHECK(build_document(t, s).card("K_POINTS")->option == "gamma");
    t.parameters[0].value = Value{std::string("automatic 7 7 2 1 1 0")};
    auto doc = build_document(t, s);
    CHECK(doc.card("K_POINTS")->rows.at(0) == std::vector<std::string>{"7", "7", "2", "1", "1", "0"});
}

TEST_CASE("static validation findings") {
    auto& g = testsupport::graph();
    auto base = parse_input(kSample);

    auto doc = base;
    doc.namelists[1].parameters.push_back({"ecutwfcc", Value{30.0}});
    auto r = validate_static(doc, g);
    REQUIRE(r.has_errors());
    CHECK(r.findings.front().code == "unknown-parameter");

    doc = base;
    doc.namelists[0].parameters.push_back({"ecutwfc", Value{30.0}});
    CHECK(validate_static(doc, g).findings.front().code == "misplaced-parameter");

    doc = base;
    doc.namelists[1].parameters.push_back({"nspin", Value{std::string("two")}});
    CHECK(validate_static(doc, g).findings.front().code == "type-mismatch");

    doc = base;
    doc.namelists[1].parameters.push_back({"nspin", Value{std::int64_t{3}}});
    CHECK(validate_static(doc, g).findings.front().code == "value-not-allowed");

    doc = base;
    doc.namelists[1].parameters[1].value = Value{std::int64_t{3}};
    bool count = false;
    for (const auto& f : validate_static(doc, g).findings) count = count || f.code == "count-mismatch";
    CHECK(count);

    doc = base;
    doc.cards.erase(doc.cards.begin() + 3);
    bool missing = false;
    for (const auto& f : validate_static(doc, g).findings) missing = missing || f.code == "missing-card";
    CHECK(missing);
}

TEST_CASE("randomized templates survive render and parse") {
    std::mt19937_64 rng(20240611);
    auto s = fixture("pds2_two_d.json");
    for (int i = 0; i < 200; ++i) {
        auto t = testsupport::random_template(testsupport::graph(), rng);
        REQUIRE_NOTHROW(check_template(t, testsupport::graph()));
        auto doc = build_document(t, s);
        auto text = render_document(doc);
        auto back = parse_input(text);
        CHECK_MESSAGE(back == doc, text);
        std::string why;
        CHECK_MESSAGE(testsupport::template_values_present(t, back, &why), why);
    }
}
