#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genius/request.hpp"

namespace genius::materials {

enum class Source { MC2D, MC3D, fixture };

std::string_view to_string(Source source);

using Vec3 = std::array<double, 3>;
using Cell = std::array<Vec3, 3>;  // rows are lattice vectors, angstrom

struct Structure {
    std::string formula;
    Source source = Source::fixture;
    std::vector<std::string> species;  // one element symbol per atom
    std::vector<Vec3> positions;       // fractional
    Cell cell{};
    std::map<std::string, std::string> pseudopotentials;
    nlohmann::json metadata = nlohmann::json::object();

    /// Distinct species in order of first appearance.
    std::vector<std::string> species_types() const;

    bool operator==(const Structure&) const = default;
    nlohmann::json to_json() const;
    static Structure from_json(const nlohmann::json& j);
};

struct FormulaPart {
    std::string element;
    int count = 1;
    bool operator==(const FormulaPart&) const = default;
};

class FormulaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularCellError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class MaterialNotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "PdS2" -> [{Pd,1},{S,2}]. Repeated elements are merged at their first position.
std::vector<FormulaPart> parse_formula(std::string_view formula);

double determinant(const Cell& cell);

/// Wraps positions into [0,1), orders atoms by the formula's element order and checks the cell. Idempotent.
Structure standardize(Structure structure);

class Backend {
public:
    virtual ~Backend() = default;
    virtual std::optional<Structure> fetch(std::string_view formula, Dimensionality dim) const = 0;
};

/// One JSON file per entry named <lowercase formula>_<two_d|three_d>.json.
class FixtureBackend : public Backend {
public:
    explicit FixtureBackend(std::filesystem::path directory) : directory_(std::move(directory)) {}
    std::optional<Structure> fetch(std::string_view formula, Dimensionality dim) const override;
    static std::string file_name(std::string_view formula, Dimensionality dim);

private:
    std::filesystem::path directory_;
};

/// two_d routes to MC2D, three_d to MC3D. Throws FormulaError or MaterialNotFound.
Structure resolve_structure(const ParsedRequest& request, const Backend& backend);

}  // namespace genius::materials
