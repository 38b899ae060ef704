#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version used by the
// library and a serial reference in genius::kernels::serial that the tests
// compare against; the benchmark target times the two side by side.

#include <cstddef>
#include <span>
#include <vector>

#include "genius/retrieval.hpp"

namespace genius::kernels {

/// Cosine similarity of `query` against every document.
std::vector<double> cosine_scores(const retrieval::SparseVector& query, std::span<const retrieval::SparseVector> docs);

struct BestMatch {
    std::size_t first = 0;
    std::size_t second = 0;
    double first_distance = 0.0;  // Euclidean
    double second_distance = 0.0;
};

/// Nearest and second-nearest rows of `weights` (units x dim) for each row of
/// `samples` (n x dim). Ties go to the lower unit index.
std::vector<BestMatch> best_matches(std::span<const double> samples, std::size_t dim,
                                    std::span<const double> weights);

/// Mean Euclidean distance from each unit's weight to its grid neighbours.
std::vector<double> mean_neighbor_distance(std::span<const double> weights, std::size_t dim,
                                           const std::vector<std::vector<std::size_t>>& neighbors);

/// One mini-batch step: w_j += lr * mean_s h(j, bmu_s) (x_s - w_j) with a Gaussian h over the squared
/// grid distances `grid_d2` (units x units). Units are independent, so the result does not depend on scheduling.
void som_batch_update(std::span<double> weights, std::size_t dim, std::span<const double> batch,
                      std::span<const std::size_t> bmus, std::span<const double> grid_d2, double lr, double sigma);

namespace serial {
std::vector<double> cosine_scores(const retrieval::SparseVector& query, std::span<const retrieval::SparseVector> docs);
std::vector<BestMatch> best_matches(std::span<const double> samples, std::size_t dim,
                                    std::span<const double> weights);
std::vector<double> mean_neighbor_distance(std::span<const double> weights, std::size_t dim,
                                           const std::vector<std::vector<std::size_t>>& neighbors);
void som_batch_update(std::span<double> weights, std::size_t dim, std::span<const double> batch,
                      std::span<const std::size_t> bmus, std::span<const double> grid_d2, double lr, double sigma);
}  // namespace serial

}  // namespace genius::kernels
