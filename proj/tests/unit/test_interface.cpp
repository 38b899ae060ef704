#include <doctest.h>

#include "genius/interface.hpp"
#include "support.hpp"

using namespace genius;
using namespace genius::interface;
using nlohmann::json;

namespace {

json parse_catalog(const json& reply) {
    return {{"entries", json::array({{{"template", "interface_parse"}, {"response", reply}}})}};
}

}  // namespace

TEST_CASE("parse_fields reads the extraction reply") {
    auto gw = testsupport::scripted_gateway(parse_catalog(
        {{"keywords", {"relax", "PdS2"}}, {"material_formula", "PdS2"}, {"dimensionality", "2D"}, {"calculation_kind", "relax"}}));
    auto r = parse_fields("relax monolayer PdS2", *gw, testsupport::model());
    CHECK(r.material_formula == "PdS2");
    CHECK(r.dimensionality == Dimensionality::two_d);
    CHECK(r.calculation_kind == "relax");
    CHECK(r.raw_prompt == "relax monolayer PdS2");
}

TEST_CASE("parse_fields rejects bad replies") {
    auto bad_kind = testsupport::scripted_gateway(parse_catalog(
        {{"keywords", json::array()}, {"material_formula", "Si"}, {"dimensionality", "3D"}, {"calculation_kind", "phonon"}}));
    CHECK_THROWS_AS(parse_fields("x", *bad_kind, testsupport::model()), ParseFailure);
    auto bad_dim = testsupport::scripted_gateway(parse_catalog(
        {{"keywords", json::array()}, {"material_formula", "Si"}, {"dimensionality", "4D"}, {"calculation_kind", "scf"}}));
    CHECK_THROWS_AS(parse_fields("x", *bad_dim, testsupport::model()), ParseFailure);
    auto prose = testsupport::scripted_gateway(json{{"interface_parse", "I cannot help"}});
    CHECK_THROWS(parse_fields("x", *prose, testsupport::model()));
}

TEST_CASE("conditions are filtered to the graph") {
    auto& g = testsupport::graph();
    auto gw = testsupport::scripted_gateway(
        {{"entries", json::array({{{"template", "condition_extract"},
                                   {"response", {{"conditions", {"SCF calculation", "Not a condition"}}}}}})}});
    ParsedRequest r;
    r.material_formula = "Cu";
    r.raw_prompt = "scf of copper";
    auto conds = extract_conditions(r, g, *gw, testsupport::model());
    CHECK(std::find(conds.begin(), conds.end(), "SCF calculation") != conds.end());
    CHECK(std::find(conds.begin(), conds.end(), "Not a condition") == conds.end());
    for (const auto& c : conds) CHECK(g.has_condition(c));
}

TEST_CASE("complexity scoring") {
    CHECK(label_for_score(0) == ComplexityLabel::basic);
    CHECK(label_for_score(4) == ComplexityLabel::basic);
    CHECK(label_for_score(5) == ComplexityLabel::standard);
    CHECK(label_for_score(8) == ComplexityLabel::standard);
    CHECK(label_for_score(9) == ComplexityLabel::complex);
    CHECK(complexity_features().size() == kComplexityFeatureCount);

    std::vector<bool> f(10, false);
    f[0] = f[1] = true;
    auto s = score_from_features(f);
    CHECK(s.score == 2);
    CHECK(s.label == ComplexityLabel::basic);

    auto plain = rule_based_features("hello");
    CHECK(plain.size() == 10);
    auto rich = rule_based_features("Relax monolayer PdS2 with B3LYP, 7x7x2 k-points, spin polarized, conv_thr 1e-8 Ry");
    CHECK(std::count(rich.begin(), rich.end(), true) > std::count(plain.begin(), plain.end(), true));

    auto broken = testsupport::scripted_gateway(json{{"complexity_score", "not json"}});
    auto fb = score_complexity("x", *broken, testsupport::model());
    CHECK(fb.fallback);
    CHECK(fb.label == ComplexityLabel::standard);
}

TEST_CASE("structure-bound nodes") {
    CHECK(is_structure_bound("nat"));
    CHECK(is_structure_bound("ATOMIC_POSITIONS"));
    CHECK_FALSE(is_structure_bound("ecutwfc"));
}
