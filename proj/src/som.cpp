#include "genius/analytics.hpp"
#include "genius/kernels.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace genius::analytics {

namespace {

constexpr int kAxialDirections[6][2] = {{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};

}  // namespace

HexGrid::HexGrid(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("grid dimensions must be positive");
    neighbors_.resize(size());
    for (std::size_t u = 0; u < size(); ++u) {
        auto [q, r] = axial(u);
        for (const auto& d : kAxialDirections) {
            int nq = q + d[0];
            int nr = r + d[1];
            if (nq < 0 || nq >= cols_) continue;
            int row = nr + (nq + (nq & 1)) / 2;
            if (row < 0 || row >= rows_) continue;
            neighbors_[u].push_back(static_cast<std::size_t>(row * cols_ + nq));
        }
    }
}

std::pair<int, int> HexGrid::offset(std::size_t unit) const {
    int u = static_cast<int>(unit);
    return {u / cols_, u % cols_};
}

std::pair<int, int> HexGrid::axial(std::size_t unit) const {
    auto [row, col] = offset(unit);
    return {col, row - (col + (col & 1)) / 2};
}

std::pair<double, double> HexGrid::position(std::size_t unit) const {
    auto [q, r] = axial(unit);
    return {std::sqrt(3.0) / 2.0 * q, r + q / 2.0};
}

double HexGrid::distance(std::size_t a, std::size_t b) const {
    auto [ax, ay] = position(a);
    auto [bx, by] = position(b);
    return std::hypot(ax - bx, ay - by);
}

bool HexGrid::adjacent(std::size_t a, std::size_t b) const {
    for (auto n : neighbors_[a])
        if (n == b) return true;
    return false;
}

double HexGrid::radius() const { return std::max(rows_, cols_) / 2.0; }

nlohmann::json SomModel::u_matrix_json() const {
    nlohmann::json cells = nlohmann::json::array();
    for (std::size_t u = 0; u < grid.size(); ++u) {
        auto [row, col] = grid.offset(u);
        auto [q, r] = grid.axial(u);
        auto [x, y] = grid.position(u);
        cells.push_back({{"unit", u}, {"row", row}, {"col", col}, {"q", q}, {"r", r}, {"x", x}, {"y", y},
                         {"value", u_matrix[u]}});
    }
    return {{"rows", grid.rows()}, {"cols", grid.cols()}, {"layout", "even-q"}, {"cells", cells},
            {"quantization_error", quantization_error}, {"topological_error", topological_error}};
}

nlohmann::json SomModel::hit_map_json() const {
    nlohmann::json cells = nlohmann::json::array();
    for (std::size_t u = 0; u < grid.size(); ++u) {
        auto [row, col] = grid.offset(u);
        cells.push_back({{"unit", u}, {"row", row}, {"col", col}, {"hits", hit_counts[u]}});
    }
    return {{"rows", grid.rows()}, {"cols", grid.cols()}, {"layout", "even-q"}, {"cells", cells}};
}

namespace {

double mean_quantization(std::span<const double> data, std::size_t dim, std::span<const double> weights,
                         bool parallel) {
    auto matches = parallel ? kernels::best_matches(data, dim, weights) : kernels::serial::best_matches(data, dim, weights);
    double sum = 0.0;
    for (const auto& m : matches) sum += m.first_distance;
    return sum / static_cast<double>(matches.size());
}

}  // namespace

SomModel train_som(const std::vector<std::vector<double>>& embeddings, const SomConfig& config) {
    if (embeddings.empty()) throw std::invalid_argument("SOM needs at least one embedding");
    const std::size_t dim = embeddings.front().size();
    if (dim == 0) throw std::invalid_argument("embeddings have zero dimension");
    if (config.iterations <= 0 || config.batch_size <= 0) throw std::invalid_argument("iterations and batch size must be positive");
    std::vector<double> data;
    data.reserve(embeddings.size() * dim);
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        const auto& v = embeddings[i];
        if (v.size() != dim)
            throw std::invalid_argument("embedding " + std::to_string(i) + " has dimension " + std::to_string(v.size()) +
                                        ", expected " + std::to_string(dim));
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (std::fabs(norm - 1.0) > 1e-6)
            throw std::invalid_argument("embedding " + std::to_string(i) + " is not unit-normalized (norm " +
                                        std::to_string(norm) + ")");
        data.insert(data.end(), v.begin(), v.end());
    }

    SomModel model;
    model.grid = HexGrid(config.rows, config.cols);
    model.dim = dim;
    const std::size_t units = model.grid.size();
    const std::size_t n = embeddings.size();

    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    model.weights.resize(units * dim);
    for (std::size_t u = 0; u < units; ++u) {
        double norm = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            double x = gauss(rng);
            model.weights[u * dim + k] = x;
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) norm = 1.0;
        for (std::size_t k = 0; k < dim; ++k) model.weights[u * dim + k] /= norm;
    }

    std::vector<double> grid_d2(units * units);
    for (std::size_t a = 0; a < units; ++a)
        for (std::size_t b = 0; b < units; ++b) {
            double d = model.grid.distance(a, b);
            grid_d2[a * units + b] = d * d;
        }

    const double sigma0 = config.radius_start.value_or(model.grid.radius());
    const double sigma1 = config.radius_end;
    const int total = config.iterations;
    const std::size_t batch_size = static_cast<std::size_t>(config.batch_size);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<double> batch(batch_size * dim);
    std::vector<std::size_t> bmus(batch_size);

    std::vector<int> marks;
    for (int pct : {10, 50, 100}) marks.push_back(std::max(1, static_cast<int>(static_cast<long long>(total) * pct / 100)));
    std::size_t next_mark = 0;

    for (int it = 0; it < total; ++it) {
        double frac = total > 1 ? static_cast<double>(it) / (total - 1) : 1.0;
        double lr = config.learning_rate_start + (config.learning_rate_end - config.learning_rate_start) * frac;
        double sigma = sigma0 + (sigma1 - sigma0) * frac;
        for (std::size_t s = 0; s < batch_size; ++s) {
            std::size_t idx = pick(rng);
            std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(idx * dim), dim,
                        batch.begin() + static_cast<std::ptrdiff_t>(s * dim));
        }
        auto matches = config.parallel ? kernels::best_matches(batch, dim, model.weights)
                                       : kernels::serial::best_matches(batch, dim, model.weights);
        for (std::size_t s = 0; s < batch_size; ++s) bmus[s] = matches[s].first;
        if (config.parallel)
            kernels::som_batch_update(model.weights, dim, batch, bmus, grid_d2, lr, sigma);
        else
            kernels::serial::som_batch_update(model.weights, dim, batch, bmus, grid_d2, lr, sigma);

        while (next_mark < marks.size() && it + 1 == marks[next_mark]) {
            model.checkpoints.emplace_back(it + 1, mean_quantization(data, dim, model.weights, config.parallel));
            ++next_mark;
        }
    }

    auto matches = config.parallel ? kernels::best_matches(data, dim, model.weights)
                                   : kernels::serial::best_matches(data, dim, model.weights);
    model.hit_counts.assign(units, 0);
    double qe = 0.0;
    std::size_t topo = 0;
    for (const auto& m : matches) {
        ++model.hit_counts[m.first];
        qe += m.first_distance;
        if (units > 1 && !model.grid.adjacent(m.first, m.second)) ++topo;
    }
    model.quantization_error = qe / static_cast<double>(n);
    model.topological_error = static_cast<double>(topo) / static_cast<double>(n);
    model.u_matrix = config.parallel ? kernels::mean_neighbor_distance(model.weights, dim, model.grid.neighbors())
                                     : kernels::serial::mean_neighbor_distance(model.weights, dim, model.grid.neighbors());
    return model;
}

std::vector<std::vector<double>> read_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::vector<double>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad value '" + cell + "'");
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace genius::analytics
