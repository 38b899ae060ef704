#include "genius/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace genius::analytics {

SuccessStats SuccessStats::from_counts(std::size_t total, std::size_t successes, std::size_t zero_shot_successes) {
    if (total == 0) throw std::invalid_argument("no runs to aggregate");
    if (successes > total || zero_shot_successes > successes)
        throw std::invalid_argument("inconsistent counts: need zero_shot <= successes <= total");
    SuccessStats s;
    s.total = total;
    s.successes = successes;
    s.zero_shot_successes = zero_shot_successes;
    s.p_s = static_cast<double>(successes) / static_cast<double>(total);
    s.p_zs = static_cast<double>(zero_shot_successes) / static_cast<double>(total);
    if (total > zero_shot_successes)
        s.p_aeh_given_not_zs = static_cast<double>(successes - zero_shot_successes) /
                               static_cast<double>(total - zero_shot_successes);
    if (successes > 0)
        s.zero_shot_share_of_successes = static_cast<double>(zero_shot_successes) / static_cast<double>(successes);
    return s;
}

nlohmann::json SuccessStats::to_json() const {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json("N/A"); };
    return {{"total", total},
            {"successes", successes},
            {"zero_shot_successes", zero_shot_successes},
            {"p_s", p_s},
            {"p_zs", p_zs},
            {"p_aeh_given_not_zs", opt(p_aeh_given_not_zs)},
            {"zero_shot_share_of_successes", opt(zero_shot_share_of_successes)}};
}

std::vector<std::pair<double, double>> Aggregate::success_fractions() const {
    std::vector<std::pair<double, double>> out;
    if (stats.successes == 0) return out;
    for (const auto& [attempt, labels] : histogram) {
        std::size_t n = 0;
        for (const auto& [label, count] : labels) n += count;
        out.emplace_back(attempt, 100.0 * static_cast<double>(n) / static_cast<double>(stats.successes));
    }
    return out;
}

nlohmann::json Aggregate::to_json() const {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [attempt, labels] : histogram) hist[std::to_string(attempt)] = labels;
    return {{"stats", stats.to_json()},
            {"histogram", hist},
            {"failures_by_label", failures_by_label},
            {"skipped", skipped}};
}

Aggregate aggregate_logs(const std::vector<nlohmann::json>& documents) {
    Aggregate agg;
    std::size_t total = 0, successes = 0, zero_shot = 0;
    for (const auto& doc : documents) {
        if (!doc.is_object() || !doc.contains("status") || !doc["status"].is_string() ||
            !doc.contains("total_attempts") || !doc["total_attempts"].is_number_integer() ||
            doc["total_attempts"].get<int>() < 0) {
            ++agg.skipped;
            continue;
        }
        const auto status = doc["status"].get<std::string>();
        if (status != "success" && status != "failure") {
            ++agg.skipped;
            continue;
        }
        std::string label = doc.value("complexity_label", "standard");
        ++total;
        if (status == "success") {
            int attempts = doc["total_attempts"].get<int>();
            ++successes;
            if (attempts == 0) ++zero_shot;
            ++agg.histogram[attempts][label];
        } else {
            ++agg.failures_by_label[label];
        }
    }
    if (total == 0) throw std::invalid_argument("no usable result documents");
    agg.stats = SuccessStats::from_counts(total, successes, zero_shot);
    return agg;
}

Aggregate aggregate_log_dir(const std::filesystem::path& directory) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory)) throw std::invalid_argument("not a directory: " + directory.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (entry.is_directory() && fs::exists(entry.path() / "result.json"))
            files.push_back(entry.path() / "result.json");
        else if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<nlohmann::json> docs;
    std::size_t unreadable = 0;
    for (const auto& f : files) {
        std::ifstream in(f);
        auto j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded())
            ++unreadable;
        else
            docs.push_back(std::move(j));
    }
    auto agg = aggregate_logs(docs);
    agg.skipped += unreadable;
    return agg;
}

double DecayFit::operator()(double x) const { return A * std::exp(-b * x) + C; }

std::optional<int> DecayFit::regime_boundary() const {
    if (degenerate || C <= 0.0 || b <= 0.0) return std::nullopt;
    if (A < 0.1 * C) return 1;
    // A e^{-bx} < 0.1 C  <=>  x > ln(A / 0.1C) / b
    int x = static_cast<int>(std::floor(std::log(A / (0.1 * C)) / b)) + 1;
    while (x > 1 && A * std::exp(-b * (x - 1)) < 0.1 * C) --x;
    while (!(A * std::exp(-b * x) < 0.1 * C)) ++x;
    return std::max(1, x);
}

nlohmann::json DecayFit::to_json() const {
    nlohmann::json j = {{"A", A},
                        {"b", b},
                        {"C", C},
                        {"rmse", rmse},
                        {"stderr", {{"A", stderr_abc[0]}, {"b", stderr_abc[1]}, {"C", stderr_abc[2]}}},
                        {"degenerate", degenerate},
                        {"iterations", iterations},
                        {"points", points}};
    auto boundary = regime_boundary();
    j["regime_boundary"] = boundary ? nlohmann::json(*boundary) : nlohmann::json(nullptr);
    return j;
}

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

std::optional<Vec3> solve3(Mat3 m, Vec3 v) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
        if (std::fabs(m[pivot][col]) < 1e-300) return std::nullopt;
        std::swap(m[col], m[pivot]);
        std::swap(v[col], v[pivot]);
        for (int r = col + 1; r < 3; ++r) {
            double f = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
            v[r] -= f * v[col];
        }
    }
    Vec3 x{};
    for (int r = 2; r >= 0; --r) {
        double s = v[r];
        for (int c = r + 1; c < 3; ++c) s -= m[r][c] * x[c];
        x[r] = s / m[r][r];
    }
    return x;
}

std::optional<Mat3> invert3(const Mat3& m) {
    Mat3 inv{};
    for (int c = 0; c < 3; ++c) {
        Vec3 e{};
        e[c] = 1.0;
        auto col = solve3(m, e);
        if (!col) return std::nullopt;
        for (int r = 0; r < 3; ++r) inv[r][c] = (*col)[r];
    }
    return inv;
}

double sse(const std::vector<std::pair<double, double>>& pts, const Vec3& p) {
    double s = 0.0;
    for (const auto& [x, y] : pts) {
        double r = y - (p[0] * std::exp(-p[1] * x) + p[2]);
        s += r * r;
    }
    return s;
}

void normal_equations(const std::vector<std::pair<double, double>>& pts, const Vec3& p, Mat3& jtj, Vec3& jtr) {
    jtj = {};
    jtr = {};
    for (const auto& [x, y] : pts) {
        double e = std::exp(-p[1] * x);
        Vec3 g{e, -p[0] * x * e, 1.0};
        double r = y - (p[0] * e + p[2]);
        for (int i = 0; i < 3; ++i) {
            jtr[i] += g[i] * r;
            for (int k = 0; k < 3; ++k) jtj[i][k] += g[i] * g[k];
        }
    }
}

}  // namespace

DecayFit fit_decay(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4) throw std::invalid_argument("decay fit needs at least 4 points");
    DecayFit fit;
    fit.points = points.size();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& [x, y] : points) {
        if (!std::isfinite(x) || !std::isfinite(y)) throw std::invalid_argument("non-finite point in decay data");
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    const double n = static_cast<double>(points.size());
    if (hi - lo <= 1e-12 * std::max(1.0, std::fabs(hi))) {
        fit.C = lo;
        fit.degenerate = true;
        return fit;
    }

    Vec3 p{hi - lo, 0.5, lo};
    double cost = sse(points, p);
    double rmse = std::sqrt(cost / n);
    double lambda = 1e-3;
    const double scale = std::max(std::fabs(hi), std::fabs(lo));
    int it = 0;
    for (; it < 200; ++it) {
        Mat3 jtj;
        Vec3 jtr;
        normal_equations(points, p, jtj, jtr);
        bool accepted = false;
        while (lambda < 1e20) {
            Mat3 damped = jtj;
            for (int i = 0; i < 3; ++i) damped[i][i] += lambda * std::max(jtj[i][i], 1e-12);
            auto step = solve3(damped, jtr);
            if (!step) {
                lambda *= 10.0;
                continue;
            }
            Vec3 trial{p[0] + (*step)[0], p[1] + (*step)[1], p[2] + (*step)[2]};
            double trial_cost = sse(points, trial);
            if (std::isfinite(trial_cost) && trial_cost <= cost) {
                p = trial;
                cost = trial_cost;
                lambda = std::max(lambda / 10.0, 1e-15);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!accepted) break;
        double next = std::sqrt(cost / n);
        double change = rmse > 0.0 ? std::fabs(rmse - next) / rmse : 0.0;
        rmse = next;
        if (rmse <= 1e-15 * scale) break;
        if (change < 1e-10) break;
    }
    fit.A = p[0];
    fit.b = p[1];
    fit.C = p[2];
    fit.rmse = rmse;
    fit.iterations = it + 1;

    Mat3 jtj;
    Vec3 jtr;
    normal_equations(points, p, jtj, jtr);
    if (auto inv = invert3(jtj); inv && points.size() > 3) {
        double sigma2 = cost / (n - 3.0);
        for (int i = 0; i < 3; ++i) fit.stderr_abc[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, sigma2 * (*inv)[i][i]));
    }
    return fit;
}

std::vector<std::pair<double, double>> read_fractions_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::pair<double, double>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected attempt,fraction");
        try {
            out.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
        } catch (const std::invalid_argument&) {
            if (out.empty()) continue;  // header
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": not a number");
        }
    }
    return out;
}

double q_only_success(const SuccessStats& stats, double alpha, double beta) {
    if (!(alpha >= 1.0) || !(beta >= 1.0)) throw std::domain_error("alpha and beta must be >= 1");
    double p_aeh = stats.p_aeh_given_not_zs.value_or(0.0);
    return stats.p_zs / alpha + p_aeh / beta - stats.p_zs * p_aeh / (alpha * beta);
}

double q_only_success(const SuccessStats& stats, double gamma) { return q_only_success(stats, gamma, gamma); }

double q_only_sensitivity(const SuccessStats& stats, double gamma) {
    if (!(gamma > 1.0)) throw std::domain_error("gamma must be > 1");
    double p_aeh = stats.p_aeh_given_not_zs.value_or(0.0);
    return -(stats.p_zs + p_aeh) / (gamma * gamma) + 2.0 * stats.p_zs * p_aeh / (gamma * gamma * gamma);
}

}  // namespace genius::analytics
