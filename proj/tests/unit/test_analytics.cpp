#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "genius/analytics.hpp"
#include "support.hpp"

using namespace genius::analytics;
using nlohmann::json;

TEST_CASE("success stats") {
    auto s = SuccessStats::from_counts(295, 235, 42);
    CHECK(s.p_s == doctest::Approx(235.0 / 295));
    CHECK(s.p_zs == doctest::Approx(42.0 / 295));
    CHECK(*s.p_aeh_given_not_zs == doctest::Approx(193.0 / 253));
    CHECK(s.p_zs + (1 - s.p_zs) * *s.p_aeh_given_not_zs == doctest::Approx(s.p_s).epsilon(1e-12));
    CHECK_THROWS_AS(SuccessStats::from_counts(0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(SuccessStats::from_counts(10, 11, 0), std::invalid_argument);
    CHECK_THROWS_AS(SuccessStats::from_counts(10, 5, 6), std::invalid_argument);
    auto all = SuccessStats::from_counts(4, 4, 4);
    CHECK_FALSE(all.p_aeh_given_not_zs);
    CHECK(all.to_json()["p_aeh_given_not_zs"] == "N/A");
}

TEST_CASE("gamma ablation") {
    auto s = SuccessStats::from_counts(295, 235, 42);
    CHECK(q_only_success(s, 1.0) == doctest::Approx(s.p_s));
    CHECK(q_only_success(s, 1.5) == doctest::Approx(0.555).epsilon(0.002));
    CHECK(q_only_success(s, 2.0) == doctest::Approx(0.4255).epsilon(0.002));
    CHECK_THROWS_AS(q_only_success(s, 0.5), std::domain_error);
    for (double g : {1.2, 1.5, 2.0, 3.0}) {
        const double h = 1e-6;
        double fd = (q_only_success(s, g + h) - q_only_success(s, g - h)) / (2 * h);
        CHECK(q_only_sensitivity(s, g) == doctest::Approx(fd).epsilon(1e-5));
        CHECK(q_only_sensitivity(s, g) < 0);
    }
    CHECK_THROWS_AS(q_only_sensitivity(s, 1.0), std::domain_error);
}

TEST_CASE("log aggregation") {
    std::vector<json> docs = {
        {{"status", "success"}, {"total_attempts", 0}, {"complexity_label", "basic"}},
        {{"status", "success"}, {"total_attempts", 2}, {"complexity_label", "complex"}},
        {{"status", "success"}, {"total_attempts", 0}},
        {{"status", "failure"}, {"total_attempts", 9}, {"complexity_label", "basic"}},
        {{"status", "running"}, {"total_attempts", 1}},
        {{"total_attempts", 1}},
        {{"status", "success"}, {"total_attempts", -1}},
    };
    auto a = aggregate_logs(docs);
    CHECK(a.stats.total == 4);
    CHECK(a.stats.successes == 3);
    CHECK(a.stats.zero_shot_successes == 2);
    CHECK(a.skipped == 3);
    CHECK(a.histogram[0]["basic"] == 1);
    CHECK(a.histogram[0]["standard"] == 1);
    CHECK(a.histogram[2]["complex"] == 1);
    CHECK(a.failures_by_label["basic"] == 1);
    auto f = a.success_fractions();
    CHECK(f.front().second == doctest::Approx(200.0 / 3));
    CHECK_THROWS(aggregate_logs({json{{"status", "running"}}}));
}

TEST_CASE("decay fit recovers synthetic parameters") {
    std::vector<std::pair<double, double>> pts;
    for (int x = 0; x < 10; ++x) pts.emplace_back(x, 5 * std::exp(-0.7 * x) + 2);
    auto fit = fit_decay(pts);
    CHECK(fit.A == doctest::Approx(5).epsilon(1e-6));
    CHECK(fit.b == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(fit.C == doctest::Approx(2).epsilon(1e-6));
    CHECK(fit.rmse < 1e-8);
    CHECK(fit.regime_boundary() == 5);

    std::vector<std::pair<double, double>> flat;
    for (int x = 0; x < 6; ++x) flat.emplace_back(x, 3.0);
    auto d = fit_decay(flat);
    CHECK(d.degenerate);
    CHECK(d.C == doctest::Approx(3.0));
    CHECK_FALSE(d.regime_boundary());
    CHECK_THROWS_AS(fit_decay({{0, 1}, {1, 2}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay({{0, 1}, {1, 2}, {2, 3}, {3, NAN}}), std::invalid_argument);
}

TEST_CASE("shipped fractions fit") {
    auto pts = read_fractions_csv(testsupport::data_dir() / "reference" / "attempt_success_fractions.csv");
    REQUIRE(pts.size() == 10);
    auto fit = fit_decay(pts);
    CHECK(fit.A == doctest::Approx(11.1).epsilon(0.2));
    CHECK(fit.rmse <= 3.0);
}

TEST_CASE("hex grid geometry") {
    HexGrid g(10, 10);
    CHECK(g.size() == 100);
    std::size_t interior = 0;
    for (std::size_t u = 0; u < g.size(); ++u) {
        auto [r, c] = g.offset(u);
        if (r > 0 && r < 9 && c > 0 && c < 9) {
            ++interior;
            CHECK(g.neighbors()[u].size() == 6);
        }
        for (auto v : g.neighbors()[u]) {
            CHECK(g.distance(u, v) == doctest::Approx(1.0));
            CHECK(g.adjacent(v, u));
        }
    }
    CHECK(interior == 64);
}

TEST_CASE("som basics") {
    CHECK_THROWS_AS(train_som({}), std::invalid_argument);
    CHECK_THROWS_AS(train_som({{1.0, 0.0}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(train_som({{2.0, 0.0}}), std::invalid_argument);

    SomConfig cfg;
    cfg.rows = cfg.cols = 4;
    cfg.iterations = 2000;
    cfg.batch_size = 1;
    auto single = train_som({{0.6, 0.8}}, cfg);
    CHECK(single.quantization_error < 1e-3);
    CHECK(single.checkpoints.size() == 3);
    CHECK(single.u_matrix.size() == 16);

    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0, 0.05);
    std::vector<std::vector<double>> data;
    for (int i = 0; i < 60; ++i) {
        std::vector<double> v = {(i % 2 ? 1.0 : 0.0) + n(rng), (i % 2 ? 0.0 : 1.0) + n(rng), n(rng)};
        double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        for (auto& x : v) x /= norm;
        data.push_back(v);
    }
    cfg.rows = cfg.cols = 6;
    cfg.iterations = 1500;
    cfg.batch_size = 10;
    auto par = train_som(data, cfg);
    cfg.parallel = false;
    auto ser = train_som(data, cfg);
    CHECK(par.quantization_error == doctest::Approx(ser.quantization_error).epsilon(1e-9));
    std::size_t hits = 0;
    for (auto h : par.hit_counts) hits += h;
    CHECK(hits == data.size());
    CHECK(par.u_matrix_json()["cells"].size() == 36);
}

TEST_CASE("reports are written") {
    auto dir = std::filesystem::temp_directory_path() / ("genius-reports-" + std::to_string(::getpid()));
    ReportInputs in;
    in.aggregate = aggregate_logs({json{{"status", "success"}, {"total_attempts", 0}},
                                   json{{"status", "success"}, {"total_attempts", 1}},
                                   json{{"status", "failure"}, {"total_attempts", 9}}});
    for (int x = 0; x < 8; ++x) in.fit_points.emplace_back(x, 4 * std::exp(-0.5 * x) + 1);
    in.fit = fit_decay(in.fit_points);
    auto written = emit_reports(in, dir);
    CHECK(written.size() >= 5);
    for (const auto& p : written) CHECK(std::filesystem::file_size(p) > 0);
    auto fit = testsupport::read_json(dir / "decay_fit.json");
    CHECK(fit["regimes"].size() == 3);
    CHECK(testsupport::read_json(dir / "stacked_bars.json")["columns"].size() == 2);
    std::filesystem::remove_all(dir);
}
