#include <doctest.h>

#include <cstdlib>

#include "genius/extraction.hpp"
#include "genius/llm.hpp"
#include "genius/prompts.hpp"
#include "support.hpp"

using namespace genius::llm;
using nlohmann::json;

TEST_CASE("structured extraction") {
    std::vector<ExpectedKey> keys = {{"value", FieldType::REAL}, {"flag", FieldType::LOGICAL}};
    auto ok = extract_structured("Sure! {\"value\": \"1.5\", \"flag\": \".true.\", \"extra\": 1} done", keys);
    CHECK(ok.value["value"].get<double>() == doctest::Approx(1.5));
    CHECK(ok.value["flag"].get<bool>());
    CHECK_FALSE(ok.value.contains("extra"));

    auto braces = extract_structured(R"(x {"value": 2, "flag": false, "note": "a } inside"} y)", keys);
    CHECK(braces.value["value"].get<double>() == 2.0);

    try {
        extract_structured("no json here", keys);
        FAIL("expected failure");
    } catch (const ExtractionError& e) {
        CHECK(e.kind() == ExtractionErrorKind::no_json_block);
    }
    try {
        extract_structured(R"({"value": 1})", keys);
        FAIL("expected failure");
    } catch (const ExtractionError& e) {
        CHECK(e.kind() == ExtractionErrorKind::missing_key);
        CHECK(e.key() == "flag");
    }
    try {
        extract_structured(R"({"value": "abc", "flag": true})", keys);
        FAIL("expected failure");
    } catch (const ExtractionError& e) {
        CHECK(e.kind() == ExtractionErrorKind::type_mismatch);
    }
    CHECK_THROWS_AS(extract_structured("{value: 1}", keys), ExtractionError);
}

TEST_CASE("coercion") {
    CHECK(coerce("3", FieldType::INTEGER)->get<long long>() == 3);
    CHECK_FALSE(coerce(2.5, FieldType::INTEGER));
    CHECK(coerce(json::array({"a", "b"}), FieldType::STRING_LIST)->size() == 2);
    CHECK_FALSE(coerce(json::array({1}), FieldType::STRING_LIST));
    CHECK(coerce(nullptr, FieldType::ANY)->is_null());
}

TEST_CASE("fenced blocks") {
    CHECK(extract_fenced_block("text\n```fortran\n&CONTROL\n/\n```\nmore") == "&CONTROL\n/\n");
    CHECK(extract_fenced_block("  plain  ") == "plain\n");
}

TEST_CASE("model specs and hierarchy validation") {
    auto m = parse_model_spec("acme/big-1", "scripted", Role::worker);
    CHECK(m.provider_id == "acme");
    CHECK(m.model_id == "big-1");
    CHECK(parse_model_spec("small", "scripted", Role::referee).provider_id == "scripted");
    ModelHierarchy h;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h.models.push_back(m);
    h.retries_per_model = 0;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    CHECK(credential_variable("my-provider") == "GENIUS_API_KEY_MY_PROVIDER");
}

TEST_CASE("templates render every placeholder") {
    CHECK(template_ids().size() == 7);
    for (const auto& id : template_ids()) {
        json b = json::object();
        for (const auto& name : placeholders(prompt_template(id).body)) b[name] = "<" + name + ">";
        auto text = render_prompt(id, b);
        CHECK(text.find("{{") == std::string::npos);
    }
    CHECK_THROWS_AS(render_prompt("error_correct", json{{"error", "x"}}), TemplateError);
    CHECK_THROWS_AS(prompt_template("nope"), TemplateError);
    auto p = placeholders(prompt_template("error_correct").body);
    CHECK(p == std::vector<std::string>{"error", "docs", "protocol", "prompt"});
}

TEST_CASE("scripted lookup order") {
    ModelRef m{"scripted", "small", Role::worker};
    json bindings = {{"error", "boom"}, {"docs", "d"}, {"protocol", "p"}, {"prompt", "q"}};
    ChatRequest req;
    req.template_id = "error_correct";
    req.bindings = bindings;
    req.system_prompt = "s";
    req.user_prompt = "u";

    ScriptedProvider p;
    p.set_default("fallback");
    CHECK(p.complete(m, req).response_text == "fallback");
    p.add({"error_correct", std::nullopt, std::nullopt, std::nullopt, {}, "template default", std::nullopt, false});
    CHECK(p.complete(m, req).response_text == "template default");
    p.add({"error_correct", std::nullopt, std::nullopt, std::nullopt, {{"error", "boo"}}, "rich", std::nullopt, false});
    CHECK(p.complete(m, req).response_text == "rich");
    p.add({std::nullopt, std::nullopt, prompt_hash("s", "u"), std::nullopt, {}, "by prompt", std::nullopt, false});
    CHECK(p.complete(m, req).response_text == "by prompt");
    p.add({"error_correct", stable_hash(bindings), std::nullopt, std::nullopt, {}, "exact", std::nullopt, false});
    CHECK(p.complete(m, req).response_text == "exact");
    CHECK(p.calls() == 5);

    ScriptedProvider echo;
    echo.add({"error_correct", std::nullopt, std::nullopt, std::nullopt, {}, "", std::string("protocol"), true});
    CHECK(echo.complete(m, req).response_text == "```\np\n```");

    ScriptedProvider empty;
    CHECK_THROWS_AS(empty.complete(m, req), ProviderError);
}

TEST_CASE("stable hash ignores key order") {
    CHECK(stable_hash(json{{"a", 1}, {"b", 2}}) == stable_hash(json::parse(R"({"b":2,"a":1})")));
    CHECK(stable_hash(json{{"a", 1}}) != stable_hash(json{{"a", 2}}));
}

namespace {

struct Flaky : Provider {
    int failures;
    int calls = 0;
    explicit Flaky(int f) : failures(f) {}
    ChatExchange complete(const ModelRef&, const ChatRequest& r) override {
        if (++calls <= failures) throw RateLimitError("slow down");
        return {r.system_prompt, r.user_prompt, "ok", std::nullopt, {}};
    }
};

struct Denied : Provider {
    int calls = 0;
    ChatExchange complete(const ModelRef&, const ChatRequest&) override {
        ++calls;
        throw AuthError("no");
    }
};

}  // namespace

TEST_CASE("gateway retries transport failures only") {
    Gateway gw({3, std::chrono::milliseconds(1), 2.0});
    auto flaky = std::make_shared<Flaky>(2);
    auto denied = std::make_shared<Denied>();
    gw.register_provider("flaky", flaky);
    gw.register_provider("denied", denied);
    CHECK(gw.complete({"flaky", "m", Role::worker}, "s", "u", {}).response_text == "ok");
    CHECK(Gateway::last_transport_attempts() == 3);
    CHECK_THROWS_AS(gw.complete({"denied", "m", Role::worker}, "s", "u", {}), AuthError);
    CHECK(denied->calls == 1);
    auto dead = std::make_shared<Flaky>(100);
    gw.register_provider("dead", dead);
    CHECK_THROWS_AS(gw.complete({"dead", "m", Role::worker}, "s", "u", {}), TransportError);
    CHECK(dead->calls == 4);
    CHECK_THROWS_AS(gw.complete({"missing", "m", Role::worker}, "s", "u", {}), GatewayError);
}
