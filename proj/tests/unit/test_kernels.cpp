#include <doctest.h>

#include <cmath>
#include <random>

#include "genius/analytics.hpp"
#include "genius/kernels.hpp"

using namespace genius;

namespace {

std::vector<double> random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    std::vector<double> m(rows * cols);
    for (auto& x : m) x = d(rng);
    return m;
}

}  // namespace

TEST_CASE("best matches agree with serial and break ties low") {
    auto w = random_matrix(100, 8, 1);
    auto x = random_matrix(300, 8, 2);
    auto a = kernels::best_matches(x, 8, w);
    auto b = kernels::serial::best_matches(x, 8, w);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first == b[i].first);
        CHECK(a[i].second == b[i].second);
        CHECK(a[i].first_distance == b[i].first_distance);
        CHECK(a[i].first_distance <= a[i].second_distance);
    }
    std::vector<double> same = {1, 0, 1, 0, 1, 0};
    std::vector<double> sample = {1, 0};
    auto t = kernels::best_matches(sample, 2, same);
    CHECK(t[0].first == 0);
    CHECK(t[0].second == 1);
}

TEST_CASE("mean neighbour distance agrees with serial") {
    analytics::HexGrid grid(10, 10);
    auto w = random_matrix(100, 5, 3);
    auto a = kernels::mean_neighbor_distance(w, 5, grid.neighbors());
    auto b = kernels::serial::mean_neighbor_distance(w, 5, grid.neighbors());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("batch update agrees with serial") {
    analytics::HexGrid grid(6, 7);
    const std::size_t units = grid.size(), dim = 4;
    std::vector<double> d2(units * units);
    for (std::size_t a = 0; a < units; ++a)
        for (std::size_t b = 0; b < units; ++b) d2[a * units + b] = std::pow(grid.distance(a, b), 2);
    auto w1 = random_matrix(units, dim, 4);
    auto w2 = w1;
    auto batch = random_matrix(20, dim, 5);
    std::vector<std::size_t> bmus(20);
    for (std::size_t i = 0; i < 20; ++i) bmus[i] = (i * 7) % units;
    kernels::som_batch_update(w1, dim, batch, bmus, d2, 0.3, 1.5);
    kernels::serial::som_batch_update(w2, dim, batch, bmus, d2, 0.3, 1.5);
    for (std::size_t i = 0; i < w1.size(); ++i) CHECK(w1[i] == doctest::Approx(w2[i]).epsilon(1e-12));
}
