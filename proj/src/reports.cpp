#include "genius/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace genius::analytics {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& text, std::vector<fs::path>& written) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
    written.push_back(path);
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(4);
    os << std::fixed << v;
    return os.str();
}

const char* label_color(const std::string& label) {
    if (label == "basic") return "#4c9f70";
    if (label == "standard") return "#3b6ea8";
    if (label == "complex") return "#c0504d";
    return "#888888";
}

struct Frame {
    double width = 640, height = 400, left = 60, right = 20, top = 30, bottom = 50;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
    double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

std::string svg_open(const Frame& f, const std::string& title) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << f.width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << title << "</text>\n";
    return os.str();
}

std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel, int xticks_from, int xticks_to) {
    std::ostringstream os;
    os << "<line x1=\"" << f.left << "\" y1=\"" << f.py(f.y0) << "\" x2=\"" << f.width - f.right << "\" y2=\""
       << f.py(f.y0) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << f.left << "\" y1=\"" << f.top << "\" x2=\"" << f.left << "\" y2=\"" << f.py(f.y0)
       << "\" stroke=\"black\"/>\n";
    for (int x = xticks_from; x <= xticks_to; ++x)
        os << "<text x=\"" << num(f.px(x)) << "\" y=\"" << f.py(f.y0) + 15 << "\" text-anchor=\"middle\">" << x
           << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
        os << "<text x=\"" << f.left - 5 << "\" y=\"" << num(f.py(y) + 4) << "\" text-anchor=\"end\">" << num(y).substr(0, 5)
           << "</text>\n";
    }
    os << "<text x=\"" << f.width / 2 << "\" y=\"" << f.height - 12 << "\" text-anchor=\"middle\">" << xlabel
       << "</text>\n";
    os << "<text x=\"14\" y=\"" << f.height / 2 << "\" transform=\"rotate(-90 14 " << f.height / 2
       << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
    return os.str();
}

nlohmann::json stacked_bars(const Aggregate& agg) {
    std::set<std::string> labels{"basic", "standard", "complex"};
    for (const auto& [a, m] : agg.histogram)
        for (const auto& [l, c] : m) labels.insert(l);
    nlohmann::json columns = nlohmann::json::array();
    for (const auto& [attempt, m] : agg.histogram) {
        nlohmann::json counts = nlohmann::json::object();
        std::size_t total = 0;
        for (const auto& l : labels) {
            auto it = m.find(l);
            std::size_t c = it == m.end() ? 0 : it->second;
            counts[l] = c;
            total += c;
        }
        columns.push_back({{"attempt", attempt}, {"counts", counts}, {"total", total}});
    }
    return {{"labels", labels}, {"columns", columns}, {"failures_by_label", agg.failures_by_label}};
}

std::string stacked_bars_svg(const Aggregate& agg) {
    int max_attempt = agg.histogram.empty() ? 0 : agg.histogram.rbegin()->first;
    std::size_t tallest = 1;
    for (const auto& [a, m] : agg.histogram) {
        std::size_t t = 0;
        for (const auto& [l, c] : m) t += c;
        tallest = std::max(tallest, t);
    }
    Frame f;
    f.x0 = -0.5;
    f.x1 = max_attempt + 0.5;
    f.y1 = static_cast<double>(tallest);
    std::ostringstream os;
    os << svg_open(f, "Successful runs by attempt");
    double bar = (f.px(1) - f.px(0)) * 0.7;
    for (const auto& [attempt, m] : agg.histogram) {
        double base = 0;
        for (const char* l : {"basic", "standard", "complex"}) {
            auto it = m.find(l);
            if (it == m.end() || it->second == 0) continue;
            double top = base + static_cast<double>(it->second);
            os << "<rect x=\"" << num(f.px(attempt) - bar / 2) << "\" y=\"" << num(f.py(top)) << "\" width=\""
               << num(bar) << "\" height=\"" << num(f.py(base) - f.py(top)) << "\" fill=\"" << label_color(l)
               << "\"><title>" << l << ": " << it->second << "</title></rect>\n";
            base = top;
        }
    }
    os << axes(f, "attempt at success", "runs", 0, max_attempt);
    int ly = 40;
    for (const char* l : {"basic", "standard", "complex"}) {
        os << "<rect x=\"" << f.width - 110 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\""
           << label_color(l) << "\"/><text x=\"" << f.width - 95 << "\" y=\"" << ly << "\">" << l << "</text>\n";
        ly += 15;
    }
    os << "</svg>\n";
    return os.str();
}

std::string decay_svg(const DecayFit& fit, const std::vector<std::pair<double, double>>& points) {
    double xmax = 1, ymax = 1;
    for (const auto& [x, y] : points) {
        xmax = std::max(xmax, x);
        ymax = std::max(ymax, y);
    }
    ymax = std::max(ymax, fit(0.0)) * 1.1;
    Frame f;
    f.x0 = -0.5;
    f.x1 = xmax + 0.5;
    f.y1 = ymax;
    std::ostringstream os;
    os << svg_open(f, "Success fraction by attempt");
    // regimes: attempt 0, attempts 1..x*, beyond
    auto boundary = fit.regime_boundary();
    double split1 = 0.5;
    double split2 = boundary ? std::min(*boundary + 0.5, f.x1) : f.x1;
    const char* shades[3] = {"#e8f1fa", "#f6f0e2", "#eeeeee"};
    double edges[4] = {f.x0, split1, split2, f.x1};
    for (int i = 0; i < 3; ++i) {
        if (edges[i + 1] <= edges[i]) continue;
        os << "<rect class=\"regime\" data-regime=\"" << i + 1 << "\" x=\"" << num(f.px(edges[i])) << "\" y=\"" << f.top
           << "\" width=\"" << num(f.px(edges[i + 1]) - f.px(edges[i])) << "\" height=\"" << num(f.py(0) - f.top)
           << "\" fill=\"" << shades[i] << "\"/>\n";
        os << "<text x=\"" << num((f.px(edges[i]) + f.px(edges[i + 1])) / 2) << "\" y=\"" << f.top + 14
           << "\" text-anchor=\"middle\">regime " << i + 1 << "</text>\n";
    }
    for (const auto& [x, y] : points)
        os << "<circle cx=\"" << num(f.px(x)) << "\" cy=\"" << num(f.py(y)) << "\" r=\"4\" fill=\"#3b6ea8\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"#c0504d\" stroke-width=\"2\" points=\"";
    for (int i = 0; i <= 100; ++i) {
        double x = xmax * i / 100.0;
        os << num(f.px(x)) << "," << num(f.py(std::clamp(fit(x), 0.0, ymax))) << " ";
    }
    os << "\"/>\n";
    os << "<text x=\"" << f.width - 200 << "\" y=\"" << f.top + 34 << "\">A=" << num(fit.A) << " b=" << num(fit.b)
       << " C=" << num(fit.C) << "</text>\n";
    os << "<text x=\"" << f.width - 200 << "\" y=\"" << f.top + 48 << "\">RMSE=" << num(fit.rmse) << "</text>\n";
    os << axes(f, "attempt", "% of successes", 0, static_cast<int>(xmax));
    os << "</svg>\n";
    return os.str();
}

std::string hex_svg(const SomModel& som, const std::vector<double>& values, const std::string& title) {
    const double size = 18.0;
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    double span = hi > lo ? hi - lo : 1.0;
    double minx = 1e9, miny = 1e9, maxx = -1e9, maxy = -1e9;
    for (std::size_t u = 0; u < som.grid.size(); ++u) {
        auto [x, y] = som.grid.position(u);
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
    }
    Frame f;
    f.width = (maxx - minx) * 2 * size + 4 * size;
    f.height = (maxy - miny) * 2 * size + 5 * size;
    std::ostringstream os;
    os << svg_open(f, title);
    for (std::size_t u = 0; u < som.grid.size(); ++u) {
        auto [x, y] = som.grid.position(u);
        double cx = (x - minx) * 2 * size + 2 * size;
        double cy = (y - miny) * 2 * size + 3 * size;
        double t = (values[u] - lo) / span;
        int shade = static_cast<int>(std::lround(255 * (1.0 - t)));
        os << "<polygon points=\"";
        // flat-top hexagon with circumradius so that neighbours (2*size apart) touch
        double rad = 2 * size / std::sqrt(3.0);
        for (int k = 0; k < 6; ++k) {
            double ang = M_PI / 3.0 * k;
            os << num(cx + rad * std::cos(ang)) << "," << num(cy + rad * std::sin(ang)) << " ";
        }
        os << "\" fill=\"rgb(" << shade << "," << shade << ",255)\" stroke=\"#999\"><title>unit " << u << ": "
           << values[u] << "</title></polygon>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::vector<fs::path> emit_reports(const ReportInputs& inputs, const fs::path& out_dir) {
    if (inputs.som && inputs.som->grid.size() > 0 && inputs.som->hit_counts.empty())
        throw std::invalid_argument("SOM model is empty");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) throw std::runtime_error("cannot create output directory " + out_dir.string());

    std::vector<fs::path> written;
    if (inputs.aggregate) {
        write_file(out_dir / "success_stats.json", inputs.aggregate->to_json().dump(2) + "\n", written);
        write_file(out_dir / "stacked_bars.json", stacked_bars(*inputs.aggregate).dump(2) + "\n", written);
        write_file(out_dir / "stacked_bars.svg", stacked_bars_svg(*inputs.aggregate), written);
    }
    if (inputs.fit) {
        auto j = inputs.fit->to_json();
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& [x, y] : inputs.fit_points) pts.push_back({x, y});
        j["data"] = pts;
        auto boundary = inputs.fit->regime_boundary();
        j["regimes"] = {{{"regime", 1}, {"from", 0}, {"to", 0}},
                        {{"regime", 2}, {"from", 1}, {"to", boundary ? nlohmann::json(*boundary) : nlohmann::json(nullptr)}},
                        {{"regime", 3}, {"from", boundary ? nlohmann::json(*boundary + 1) : nlohmann::json(nullptr)}, {"to", nullptr}}};
        write_file(out_dir / "decay_fit.json", j.dump(2) + "\n", written);
        write_file(out_dir / "decay_fit.svg", decay_svg(*inputs.fit, inputs.fit_points), written);
    }
    if (inputs.som) {
        const auto& som = *inputs.som;
        write_file(out_dir / "u_matrix.json", som.u_matrix_json().dump(2) + "\n", written);
        write_file(out_dir / "hit_map.json", som.hit_map_json().dump(2) + "\n", written);
        write_file(out_dir / "u_matrix.svg", hex_svg(som, som.u_matrix, "U-matrix"), written);
        std::vector<double> hits(som.hit_counts.begin(), som.hit_counts.end());
        write_file(out_dir / "hit_map.svg", hex_svg(som, hits, "Hit map"), written);
    }
    return written;
}

}  // namespace genius::analytics
