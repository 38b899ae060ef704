#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace genius::analytics {

struct SuccessStats {
    std::size_t total = 0;
    std::size_t successes = 0;
    std::size_t zero_shot_successes = 0;
    double p_s = 0.0;
    double p_zs = 0.0;
    // Undefined when every run was a zero-shot success.
    std::optional<double> p_aeh_given_not_zs;
    // Zero-shot successes over successes rather than over all runs.
    std::optional<double> zero_shot_share_of_successes;

    static SuccessStats from_counts(std::size_t total, std::size_t successes, std::size_t zero_shot_successes);
    nlohmann::json to_json() const;
};

struct Aggregate {
    SuccessStats stats;
    // attempt at success -> complexity label -> count
    std::map<int, std::map<std::string, std::size_t>> histogram;
    std::map<std::string, std::size_t> failures_by_label;
    std::size_t skipped = 0;

    /// attempt -> percent of successful runs that succeeded at that attempt.
    std::vector<std::pair<double, double>> success_fractions() const;
    nlohmann::json to_json() const;
};

/// Each document needs "status" ("success"/"failure") and an integer "total_attempts"; others are skipped.
Aggregate aggregate_logs(const std::vector<nlohmann::json>& documents);

/// Reads every result.json below `directory` (one level of run folders) and any top-level *.json file.
Aggregate aggregate_log_dir(const std::filesystem::path& directory);

struct DecayFit {
    double A = 0.0;
    double b = 0.0;
    double C = 0.0;
    double rmse = 0.0;
    std::array<double, 3> stderr_abc{0.0, 0.0, 0.0};
    bool degenerate = false;  // b is unidentifiable and reported as 0
    int iterations = 0;
    std::size_t points = 0;

    double operator()(double x) const;
    /// Smallest integer x >= 1 with A e^{-bx} < 0.1 C; none when the decay never drops below that.
    std::optional<int> regime_boundary() const;
    nlohmann::json to_json() const;
};

/// Least squares S(x) = A e^{-bx} + C by Levenberg-Marquardt. Needs at least four points.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& points);

/// CSV with an "attempt,fraction" header; '#' lines are comments.
std::vector<std::pair<double, double>> read_fractions_csv(const std::filesystem::path& path);

/// p_zs/alpha + p_aeh/beta - p_zs p_aeh/(alpha beta). Throws std::domain_error for alpha or beta below 1.
double q_only_success(const SuccessStats& stats, double alpha, double beta);
double q_only_success(const SuccessStats& stats, double gamma);

/// d/dgamma of q_only_success(stats, gamma). Throws std::domain_error for gamma <= 1.
double q_only_sensitivity(const SuccessStats& stats, double gamma);

/// Hexagonal grid, even-q offset layout; neighbours sit at unit distance.
class HexGrid {
public:
    HexGrid(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return static_cast<std::size_t>(rows_ * cols_); }

    /// Unit index = row * cols + col.
    std::pair<int, int> offset(std::size_t unit) const;
    /// Axial (q, r).
    std::pair<int, int> axial(std::size_t unit) const;
    /// Position in the plane; neighbouring centres are 1 apart.
    std::pair<double, double> position(std::size_t unit) const;
    double distance(std::size_t a, std::size_t b) const;
    bool adjacent(std::size_t a, std::size_t b) const;
    const std::vector<std::vector<std::size_t>>& neighbors() const { return neighbors_; }
    /// Radius of the grid used as the initial neighbourhood width.
    double radius() const;

private:
    int rows_;
    int cols_;
    std::vector<std::vector<std::size_t>> neighbors_;
};

struct SomConfig {
    int rows = 10;
    int cols = 10;
    int iterations = 50000;
    int batch_size = 50;
    double learning_rate_start = 0.5;
    double learning_rate_end = 0.01;
    std::optional<double> radius_start;  // grid radius when unset
    double radius_end = 1.0;
    std::uint64_t seed = 7;
    bool parallel = true;
};

struct SomModel {
    HexGrid grid{10, 10};
    std::size_t dim = 0;
    std::vector<double> weights;  // units x dim
    double quantization_error = 0.0;
    double topological_error = 0.0;
    std::vector<std::size_t> hit_counts;
    std::vector<double> u_matrix;
    // (iteration, quantization error) at 10%, 50% and 100% of training
    std::vector<std::pair<int, double>> checkpoints;

    nlohmann::json u_matrix_json() const;
    nlohmann::json hit_map_json() const;
};

/// Throws std::invalid_argument for empty input, ragged dimensions or vectors whose norm is not 1 +- 1e-6.
SomModel train_som(const std::vector<std::vector<double>>& embeddings, const SomConfig& config = {});

/// One vector per line, comma-separated decimals.
std::vector<std::vector<double>> read_embeddings(const std::filesystem::path& path);

struct ReportInputs {
    std::optional<Aggregate> aggregate;
    std::optional<DecayFit> fit;
    std::vector<std::pair<double, double>> fit_points;
    std::optional<SomModel> som;
};

/// Writes success_stats.json, decay_fit.json, stacked_bars.json, u_matrix.json, hit_map.json and SVG plots
/// for whichever inputs are present. Returns the paths written.
std::vector<std::filesystem::path> emit_reports(const ReportInputs& inputs, const std::filesystem::path& out_dir);

}  // namespace genius::analytics
