#include "genius/kernels.hpp"

#include <cmath>
#include <limits>

namespace genius::kernels {

namespace {

double squared_distance(const double* a, const double* b, std::size_t dim) {
    double sum = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

BestMatch match_one(const double* sample, std::size_t dim, std::span<const double> weights) {
    const std::size_t units = weights.size() / dim;
    double best = std::numeric_limits<double>::infinity();
    double runner_up = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    std::size_t runner_index = 0;
    for (std::size_t u = 0; u < units; ++u) {
        double d = squared_distance(sample, weights.data() + u * dim, dim);
        if (d < best) {
            runner_up = best;
            runner_index = best_index;
            best = d;
            best_index = u;
        } else if (d < runner_up) {
            runner_up = d;
            runner_index = u;
        }
    }
    if (units < 2) runner_index = best_index, runner_up = best;
    return {best_index, runner_index, std::sqrt(best), std::sqrt(runner_up)};
}

double unit_mean_distance(std::span<const double> weights, std::size_t dim, std::size_t unit,
                          const std::vector<std::size_t>& adjacent) {
    if (adjacent.empty()) return 0.0;
    double sum = 0.0;
    for (auto other : adjacent)
        sum += std::sqrt(squared_distance(weights.data() + unit * dim, weights.data() + other * dim, dim));
    return sum / static_cast<double>(adjacent.size());
}

void update_unit(double* w, std::size_t dim, std::size_t unit, std::size_t units, std::span<const double> batch,
                 std::span<const std::size_t> bmus, std::span<const double> grid_d2, double lr, double inv_two_sigma2) {
    const double scale = lr / static_cast<double>(bmus.size());
    std::vector<double> delta(dim, 0.0);
    for (std::size_t s = 0; s < bmus.size(); ++s) {
        double h = std::exp(-grid_d2[unit * units + bmus[s]] * inv_two_sigma2);
        const double* x = batch.data() + s * dim;
        for (std::size_t k = 0; k < dim; ++k) delta[k] += h * (x[k] - w[k]);
    }
    for (std::size_t k = 0; k < dim; ++k) w[k] += scale * delta[k];
}

}  // namespace

std::vector<double> cosine_scores(const retrieval::SparseVector& query, std::span<const retrieval::SparseVector> docs) {
    std::vector<double> out(docs.size());
    const auto n = static_cast<long long>(docs.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = retrieval::cosine(query, docs[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<BestMatch> best_matches(std::span<const double> samples, std::size_t dim, std::span<const double> weights) {
    const std::size_t n = dim == 0 ? 0 : samples.size() / dim;
    std::vector<BestMatch> out(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) {
        auto row = static_cast<std::size_t>(i);
        out[row] = match_one(samples.data() + row * dim, dim, weights);
    }
    return out;
}

std::vector<double> mean_neighbor_distance(std::span<const double> weights, std::size_t dim,
                                           const std::vector<std::vector<std::size_t>>& neighbors) {
    std::vector<double> out(neighbors.size());
    const auto units = static_cast<long long>(neighbors.size());
#pragma omp parallel for schedule(static)
    for (long long u = 0; u < units; ++u) {
        auto unit = static_cast<std::size_t>(u);
        out[unit] = unit_mean_distance(weights, dim, unit, neighbors[unit]);
    }
    return out;
}

void som_batch_update(std::span<double> weights, std::size_t dim, std::span<const double> batch,
                      std::span<const std::size_t> bmus, std::span<const double> grid_d2, double lr, double sigma) {
    if (dim == 0 || bmus.empty()) return;
    const std::size_t units = weights.size() / dim;
    const double inv = 1.0 / (2.0 * sigma * sigma);
    const auto count = static_cast<long long>(units);
#pragma omp parallel for schedule(static)
    for (long long u = 0; u < count; ++u) {
        auto unit = static_cast<std::size_t>(u);
        update_unit(weights.data() + unit * dim, dim, unit, units, batch, bmus, grid_d2, lr, inv);
    }
}

namespace serial {

std::vector<double> cosine_scores(const retrieval::SparseVector& query, std::span<const retrieval::SparseVector> docs) {
    std::vector<double> out;
    out.reserve(docs.size());
    for (const auto& doc : docs) out.push_back(retrieval::cosine(query, doc));
    return out;
}

std::vector<BestMatch> best_matches(std::span<const double> samples, std::size_t dim, std::span<const double> weights) {
    std::vector<BestMatch> out;
    if (dim == 0) return out;
    for (std::size_t row = 0; row < samples.size() / dim; ++row) out.push_back(match_one(samples.data() + row * dim, dim, weights));
    return out;
}

std::vector<double> mean_neighbor_distance(std::span<const double> weights, std::size_t dim,
                                           const std::vector<std::vector<std::size_t>>& neighbors) {
    std::vector<double> out;
    for (std::size_t unit = 0; unit < neighbors.size(); ++unit)
        out.push_back(unit_mean_distance(weights, dim, unit, neighbors[unit]));
    return out;
}

void som_batch_update(std::span<double> weights, std::size_t dim, std::span<const double> batch,
                      std::span<const std::size_t> bmus, std::span<const double> grid_d2, double lr, double sigma) {
    if (dim == 0 || bmus.empty()) return;
    const std::size_t units = weights.size() / dim;
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t unit = 0; unit < units; ++unit)
        update_unit(weights.data() + unit * dim, dim, unit, units, batch, bmus, grid_d2, lr, inv);
}

}  // namespace serial

}  // namespace genius::kernels
