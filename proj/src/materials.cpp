#include "genius/materials.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "genius/elements.hpp"

namespace genius::materials {

std::string_view to_string(Source source) {
    switch (source) {
        case Source::MC2D: return "MC2D";
        case Source::MC3D: return "MC3D";
        case Source::fixture: return "fixture";
    }
    return "fixture";
}

namespace {

std::optional<Source> parse_source(std::string_view text) {
    if (text == "MC2D") return Source::MC2D;
    if (text == "MC3D") return Source::MC3D;
    if (text == "fixture") return Source::fixture;
    return std::nullopt;
}

double wrap(double x) {
    double w = x - std::floor(x);
    // floor of a tiny negative can leave exactly 1.0
    if (w >= 1.0) w = 0.0;
    return w == 0.0 ? 0.0 : w;
}

}  // namespace

std::vector<std::string> Structure::species_types() const {
    std::vector<std::string> out;
    for (const auto& s : species)
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return out;
}

nlohmann::json Structure::to_json() const {
    return {{"formula", formula},
            {"source", to_string(source)},
            {"species", species},
            {"positions", positions},
            {"cell", cell},
            {"pseudopotentials", pseudopotentials},
            {"metadata", metadata}};
}

Structure Structure::from_json(const nlohmann::json& j) {
    Structure s;
    s.formula = j.at("formula").get<std::string>();
    if (j.contains("source")) {
        auto src = parse_source(j["source"].get<std::string>());
        if (!src) throw std::invalid_argument("unknown structure source");
        s.source = *src;
    }
    s.species = j.at("species").get<std::vector<std::string>>();
    s.positions = j.at("positions").get<std::vector<Vec3>>();
    s.cell = j.at("cell").get<Cell>();
    s.pseudopotentials = j.value("pseudopotentials", std::map<std::string, std::string>{});
    s.metadata = j.value("metadata", nlohmann::json::object());
    if (s.species.size() != s.positions.size())
        throw std::invalid_argument("species and positions differ in length for " + s.formula);
    return s;
}

std::vector<FormulaPart> parse_formula(std::string_view formula) {
    std::vector<FormulaPart> parts;
    std::size_t i = 0;
    if (formula.empty()) throw FormulaError("empty formula");
    while (i < formula.size()) {
        if (!std::isupper(static_cast<unsigned char>(formula[i])))
            throw FormulaError("bad formula '" + std::string(formula) + "' at offset " + std::to_string(i));
        std::size_t start = i++;
        while (i < formula.size() && std::islower(static_cast<unsigned char>(formula[i]))) ++i;
        std::string symbol(formula.substr(start, i - start));
        if (!find_element(symbol)) throw FormulaError("unknown element '" + symbol + "' in " + std::string(formula));
        int count = 0;
        bool has_digits = false;
        while (i < formula.size() && std::isdigit(static_cast<unsigned char>(formula[i]))) {
            count = count * 10 + (formula[i] - '0');
            if (count > 10000) throw FormulaError("count too large in " + std::string(formula));
            has_digits = true;
            ++i;
        }
        if (!has_digits) count = 1;
        if (count == 0) throw FormulaError("zero count in " + std::string(formula));
        auto it = std::find_if(parts.begin(), parts.end(), [&](const FormulaPart& p) { return p.element == symbol; });
        if (it != parts.end())
            it->count += count;
        else
            parts.push_back({symbol, count});
    }
    return parts;
}

double determinant(const Cell& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Structure standardize(Structure s) {
    double det = determinant(s.cell);
    if (!std::isfinite(det) || std::fabs(det) < 1e-8) throw SingularCellError("singular cell for " + s.formula);
    if (s.species.size() != s.positions.size())
        throw std::invalid_argument("species and positions differ in length for " + s.formula);
    for (auto& p : s.positions)
        for (auto& x : p) x = wrap(x);

    std::vector<std::string> order;
    try {
        for (const auto& part : parse_formula(s.formula)) order.push_back(part.element);
    } catch (const FormulaError&) {
        order = s.species_types();
    }
    auto rank = [&](const std::string& el) {
        auto it = std::find(order.begin(), order.end(), el);
        return it == order.end() ? order.size() : static_cast<std::size_t>(it - order.begin());
    };
    std::vector<std::size_t> idx(s.species.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return rank(s.species[a]) < rank(s.species[b]); });
    std::vector<std::string> species;
    std::vector<Vec3> positions;
    for (auto i : idx) {
        species.push_back(s.species[i]);
        positions.push_back(s.positions[i]);
    }
    s.species = std::move(species);
    s.positions = std::move(positions);
    return s;
}

std::string FixtureBackend::file_name(std::string_view formula, Dimensionality dim) {
    std::string name(formula);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    return name + "_" + std::string(to_string(dim)) + ".json";
}

std::optional<Structure> FixtureBackend::fetch(std::string_view formula, Dimensionality dim) const {
    auto path = directory_ / file_name(formula, dim);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    auto j = nlohmann::json::parse(in);
    return Structure::from_json(j);
}

Structure resolve_structure(const ParsedRequest& request, const Backend& backend) {
    auto parts = parse_formula(request.material_formula);
    auto found = backend.fetch(request.material_formula, request.dimensionality);
    if (!found)
        throw MaterialNotFound("no " + std::string(to_string(request.dimensionality)) + " structure for " +
                               request.material_formula);
    Structure s = standardize(std::move(*found));
    s.source = request.dimensionality == Dimensionality::two_d ? Source::MC2D : Source::MC3D;
    for (const auto& sp : s.species)
        if (std::none_of(parts.begin(), parts.end(), [&](const FormulaPart& p) { return p.element == sp; }))
            throw std::invalid_argument("structure for " + request.material_formula + " contains " + sp);
    return s;
}

}  // namespace genius::materials
