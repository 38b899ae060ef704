#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "genius/analytics.hpp"
#include "genius/kernels.hpp"
#include "genius/retrieval.hpp"

using namespace genius;

namespace {

std::vector<double> random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    std::vector<double> m(rows * cols);
    for (auto& x : m) x = d(rng);
    return m;
}

std::vector<retrieval::SparseVector> random_docs(std::size_t n) {
    std::vector<retrieval::SparseVector> docs;
    std::mt19937_64 rng(3);
    for (std::size_t i = 0; i < n; ++i) {
        std::string text;
        for (int w = 0; w < 40; ++w) text += "w" + std::to_string(rng() % 500) + " ";
        docs.push_back(retrieval::vectorize(text));
    }
    return docs;
}

template <bool Parallel>
void BM_best_matches(benchmark::State& state) {
    const std::size_t dim = 64;
    auto w = random_matrix(400, dim, 1);
    auto x = random_matrix(static_cast<std::size_t>(state.range(0)), dim, 2);
    for (auto _ : state) {
        auto r = Parallel ? kernels::best_matches(x, dim, w) : kernels::serial::best_matches(x, dim, w);
        benchmark::DoNotOptimize(r.data());
    }
}

template <bool Parallel>
void BM_batch_update(benchmark::State& state) {
    analytics::HexGrid grid(20, 20);
    const std::size_t units = grid.size(), dim = 64;
    std::vector<double> d2(units * units);
    for (std::size_t a = 0; a < units; ++a)
        for (std::size_t b = 0; b < units; ++b) d2[a * units + b] = std::pow(grid.distance(a, b), 2);
    auto w = random_matrix(units, dim, 4);
    auto batch = random_matrix(50, dim, 5);
    std::vector<std::size_t> bmus(50);
    for (std::size_t i = 0; i < bmus.size(); ++i) bmus[i] = (i * 37) % units;
    for (auto _ : state) {
        if (Parallel)
            kernels::som_batch_update(w, dim, batch, bmus, d2, 0.1, 3.0);
        else
            kernels::serial::som_batch_update(w, dim, batch, bmus, d2, 0.1, 3.0);
        benchmark::ClobberMemory();
    }
}

template <bool Parallel>
void BM_cosine(benchmark::State& state) {
    auto docs = random_docs(static_cast<std::size_t>(state.range(0)));
    auto q = retrieval::vectorize("w1 w2 w3 w4 w5 w6 w7");
    for (auto _ : state) {
        auto r = Parallel ? kernels::cosine_scores(q, docs) : kernels::serial::cosine_scores(q, docs);
        benchmark::DoNotOptimize(r.data());
    }
}

}  // namespace

BENCHMARK(BM_best_matches<false>)->Name("best_matches/serial")->Arg(500)->Arg(5000);
BENCHMARK(BM_best_matches<true>)->Name("best_matches/openmp")->Arg(500)->Arg(5000);
BENCHMARK(BM_batch_update<false>)->Name("som_batch_update/serial");
BENCHMARK(BM_batch_update<true>)->Name("som_batch_update/openmp");
BENCHMARK(BM_cosine<false>)->Name("cosine_scores/serial")->Arg(330)->Arg(5000);
BENCHMARK(BM_cosine<true>)->Name("cosine_scores/openmp")->Arg(330)->Arg(5000);

BENCHMARK_MAIN();
