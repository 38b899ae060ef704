#include <doctest.h>

#include "genius/materials.hpp"
#include "support.hpp"

using namespace genius;
using namespace genius::materials;

TEST_CASE("formula parsing") {
    auto parts = parse_formula("PdS2");
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].element == "Pd");
    CHECK(parts[1].count == 2);
    CHECK(parse_formula("SiSi").front().count == 2);
    CHECK_THROWS_AS(parse_formula("Xx2"), FormulaError);
    CHECK_THROWS_AS(parse_formula("si"), FormulaError);
    CHECK_THROWS_AS(parse_formula("S0"), FormulaError);
}

TEST_CASE("standardize wraps, orders and is idempotent") {
    Structure s;
    s.formula = "GaAs";
    s.species = {"As", "Ga"};
    s.positions = {{1.25, -0.75, 0.25}, {0, 0, 0}};
    s.cell = {{{0, 2.8, 2.8}, {2.8, 0, 2.8}, {2.8, 2.8, 0}}};
    auto once = standardize(s);
    CHECK(once.species == std::vector<std::string>{"Ga", "As"});
    CHECK(once.positions[1][0] == doctest::Approx(0.25));
    CHECK(once.positions[1][1] == doctest::Approx(0.25));
    auto twice = standardize(once);
    CHECK(twice.positions == once.positions);
    CHECK(twice.species == once.species);
}

TEST_CASE("singular cell is rejected") {
    Structure s;
    s.formula = "Si";
    s.species = {"Si"};
    s.positions = {{0, 0, 0}};
    s.cell = {{{1, 0, 0}, {2, 0, 0}, {0, 0, 1}}};
    CHECK_THROWS_AS(standardize(s), SingularCellError);
}

TEST_CASE("fixture routing by dimensionality") {
    FixtureBackend backend(testsupport::data_dir() / "structures");
    ParsedRequest r;
    r.material_formula = "PdS2";
    r.dimensionality = Dimensionality::two_d;
    auto s = resolve_structure(r, backend);
    CHECK(s.source == Source::MC2D);
    CHECK(s.species.size() == 6);
    CHECK(s.species_types() == std::vector<std::string>{"Pd", "S"});

    r.material_formula = "Si";
    r.dimensionality = Dimensionality::three_d;
    CHECK(resolve_structure(r, backend).source == Source::MC3D);

    r.dimensionality = Dimensionality::two_d;
    CHECK_THROWS_AS(resolve_structure(r, backend), MaterialNotFound);
}

TEST_CASE("every shipped fixture standardizes") {
    FixtureBackend backend(testsupport::data_dir() / "structures");
    for (const auto& e : std::filesystem::directory_iterator(testsupport::data_dir() / "structures")) {
        auto s = Structure::from_json(testsupport::read_json(e.path()));
        CAPTURE(e.path().filename().string());
        CHECK_NOTHROW(standardize(s));
        for (const auto& sp : s.species_types()) CHECK(s.pseudopotentials.count(sp) == 1);
    }
}
