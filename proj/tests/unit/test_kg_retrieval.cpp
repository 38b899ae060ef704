#include <doctest.h>

#include <cmath>

#include "genius/kernels.hpp"
#include "genius/kg.hpp"
#include "genius/retrieval.hpp"
#include "support.hpp"

using namespace genius;

TEST_CASE("shipped graph matches its manifest") {
    const auto& g = testsupport::graph();
    auto stats = kg::graph_stats(g);
    CHECK(stats.node_count == 247);
    CHECK(stats.edge_count == 330);
    CHECK(stats.condition_count == 162);
    CHECK(stats.warnings.empty());
    REQUIRE(g.find("nspin"));
    CHECK(g.find("nspin")->namelist == "SYSTEM");
    CHECK(g.find("K_POINTS")->required);
}

TEST_CASE("graph round-trips through json") {
    const auto& g = testsupport::graph();
    auto again = kg::KnowledgeGraph::load(g.to_json());
    CHECK(again == g);
}

TEST_CASE("adjacency is symmetric") {
    const auto& g = testsupport::graph();
    for (const auto& n : g.nodes())
        for (const auto& other : g.adjacency(n.name)) CHECK(g.adjacency(other).count(n.name) == 1);
}

TEST_CASE("loader rejects dangling connections") {
    auto doc = testsupport::tiny_graph(2);
    doc["nodes"][0]["connections"] = {"nope"};
    CHECK_THROWS_AS(kg::KnowledgeGraph::load(doc), kg::ReferentialIntegrityError);
}

TEST_CASE("loader rejects undeclared condition keys") {
    auto doc = testsupport::tiny_graph(1);
    doc["nodes"][0]["conditions"] = {"Smearing"};
    CHECK_THROWS_AS(kg::KnowledgeGraph::load(doc), kg::LoadError);
}

TEST_CASE("nodes_for_condition") {
    const auto& g = testsupport::graph();
    auto nodes = kg::nodes_for_condition(g, "Smearing");
    CHECK_FALSE(nodes.empty());
    CHECK(kg::nodes_for_condition(g, "k-point parallelization").empty());
    CHECK_THROWS(kg::nodes_for_condition(g, "no such condition"));
}

TEST_CASE("fnv reference vectors") {
    auto ref = testsupport::read_json(testsupport::data_dir() / "reference" / "fnv_vectors.json");
    CHECK(ref["dimension"] == retrieval::kFeatureDimension);
    for (const auto& c : ref["cases"]) {
        auto text = c["text"].get<std::string>();
        CAPTURE(text);
        CHECK(std::to_string(retrieval::fnv1a64(text)) == c["fnv1a64"].get<std::string>());
        auto v = retrieval::vectorize(text);
        REQUIRE(v.entries.size() == c["entries"].size());
        for (std::size_t i = 0; i < v.entries.size(); ++i) {
            CHECK(v.entries[i].first == c["entries"][i][0].get<std::uint32_t>());
            CHECK(v.entries[i].second == c["entries"][i][1].get<std::int32_t>());
        }
    }
}

TEST_CASE("tokenizer") {
    CHECK(retrieval::tokenize("K-points k_points") == std::vector<std::string>{"points", "points"});
    CHECK(retrieval::tokenize("ecutWFC=45") == std::vector<std::string>{"ecutwfc", "45"});
    CHECK(retrieval::tokenize("a b").empty());
}

TEST_CASE("cosine basics") {
    auto a = retrieval::vectorize("smearing width");
    CHECK(retrieval::cosine(a, a) == doctest::Approx(1.0));
    CHECK(retrieval::cosine(a, retrieval::vectorize("")) == 0.0);
}

TEST_CASE("top fraction count is ceil(0.7 n)") {
    for (std::size_t n = 0; n <= 50; ++n)
        CHECK(retrieval::top_fraction_count(n) == static_cast<std::size_t>(std::ceil(0.7 * static_cast<double>(n) - 1e-12)));
}

TEST_CASE("keyword search keeps the top 70 percent") {
    for (int n = 1; n <= 20; ++n) {
        auto g = kg::KnowledgeGraph::load(testsupport::tiny_graph(n));
        auto hits = retrieval::keyword_search(g, {"cutoff"});
        CHECK(hits.size() == static_cast<std::size_t>(std::ceil(0.7 * n - 1e-12)));
        for (std::size_t i = 1; i < hits.size(); ++i) CHECK(hits[i - 1].similarity >= hits[i].similarity);
    }
}

TEST_CASE("keyword search with no match is empty") {
    auto g = kg::KnowledgeGraph::load(testsupport::tiny_graph(5));
    CHECK(retrieval::keyword_search(g, {"zzzz"}).empty());
    CHECK(retrieval::keyword_search(g, {}).empty());
}

TEST_CASE("candidate assembly includes required nodes first") {
    auto set = retrieval::assemble_candidates(testsupport::index(), {"smearing"}, {"Smearing"});
    REQUIRE(set.final.size() >= set.required.size());
    for (std::size_t i = 0; i < set.required.size(); ++i) CHECK(set.final[i] == set.required[i]);
    CHECK(std::find(set.final.begin(), set.final.end(), "degauss") != set.final.end());
}

TEST_CASE("index cosine kernel agrees with serial") {
    const auto& idx = testsupport::index();
    auto q = retrieval::vectorize("spin polarized magnetization smearing");
    auto par = kernels::cosine_scores(q, idx.vectors());
    auto ser = kernels::serial::cosine_scores(q, idx.vectors());
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}
