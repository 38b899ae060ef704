#include <doctest.h>

#include "genius/elements.hpp"
#include "genius/value.hpp"

using namespace genius;

TEST_CASE("fortran literals") {
    CHECK(std::get<bool>(*parse_literal(".true.")));
    CHECK_FALSE(std::get<bool>(*parse_literal(".F.")));
    CHECK(std::get<std::int64_t>(*parse_literal("42")) == 42);
    CHECK(std::get<double>(*parse_literal("1.0d-6")) == doctest::Approx(1e-6));
    CHECK(std::get<double>(*parse_literal("0.7D0")) == doctest::Approx(0.7));
    CHECK(std::get<std::string>(*parse_literal("'it''s'")) == "it's");
    CHECK_FALSE(parse_literal("nan").has_value());
    CHECK_FALSE(parse_literal("'open").has_value());
}

TEST_CASE("formatting") {
    CHECK(format_real(45) == "45.0");
    CHECK(format_real(1e-10) == "1e-10");
    CHECK(format_value(Value{std::string("it's")}) == "'it''s'");
    CHECK(format_value(Value{true}) == ".true.");
    CHECK(format_value(Value{std::int64_t{3}}) == "3");
}

TEST_CASE("type conformance") {
    CHECK(conforms(Value{std::int64_t{2}}, kg::DataType::REAL));
    CHECK_FALSE(conforms(Value{2.5}, kg::DataType::INTEGER));
    CHECK(conforms(Value{std::string("4 4 4")}, kg::DataType::COMPOSITE));
    CHECK(value_from_text("1.D-6", kg::DataType::REAL).has_value());
    CHECK(std::holds_alternative<double>(*value_from_json(nlohmann::json(3), kg::DataType::REAL)));
    CHECK(std::get<std::int64_t>(*value_from_json(nlohmann::json(3.0), kg::DataType::INTEGER)) == 3);
    CHECK_FALSE(value_from_json(nlohmann::json(3.5), kg::DataType::INTEGER).has_value());
    CHECK(std::get<std::string>(*value_from_json(nlohmann::json::array({7, 7, 2}), kg::DataType::COMPOSITE)) == "7 7 2");
}

TEST_CASE("elements") {
    REQUIRE(find_element("Pd"));
    CHECK(find_element("Pd")->metal);
    CHECK_FALSE(find_element("Si")->metal);
    CHECK(find_element("S")->atomic_number == 16);
    CHECK_FALSE(find_element("Xx"));
}
