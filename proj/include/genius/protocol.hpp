#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genius/kg.hpp"
#include "genius/materials.hpp"
#include "genius/request.hpp"
#include "genius/value.hpp"

namespace genius::protocol {

struct Assignment {
    std::string key;  // as written, index suffix normalized: "starting_magnetization(1)"
    Value value;
    bool operator==(const Assignment&) const = default;
};

struct Namelist {
    std::string name;  // upper case
    std::vector<Assignment> parameters;

    const Value* get(std::string_view key) const;
    bool operator==(const Namelist&) const = default;
};

struct Card {
    std::string name;    // upper case
    std::string option;  // lower case, braces stripped; may be empty
    std::vector<std::vector<std::string>> rows;
    bool operator==(const Card&) const = default;
};

struct ProtocolDocument {
    std::vector<Namelist> namelists;
    std::vector<Card> cards;

    const Namelist* namelist(std::string_view name) const;
    const Card* card(std::string_view name) const;
    const Value* get(std::string_view section, std::string_view key) const;

    bool operator==(const ProtocolDocument&) const = default;
    nlohmann::json to_json() const;
};

enum class ParseErrorKind { unterminated_namelist, unknown_section, malformed_assignment, card_columns, unexpected_line };

std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, int line, const std::string& message);
    ParseErrorKind kind() const { return kind_; }
    int line() const { return line_; }

private:
    ParseErrorKind kind_;
    int line_;
};

class RenderError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::string_view kNamelistOrder[] = {"CONTROL", "SYSTEM", "ELECTRONS", "IONS", "CELL", "FCP", "RISM"};

bool moves_ions(std::string_view calculation);
bool variable_cell(std::string_view calculation);

/// Parameters indexed per species in the input, e.g. starting_magnetization(i).
bool is_per_species(std::string_view name);

/// "starting_magnetization(2)" -> "starting_magnetization".
std::string base_name(std::string_view key);

/// Template + structure -> document. Structure-bound inputs (ibrav, nat, ntyp, species, positions, cell)
/// come from the structure; K_POINTS must be in the template.
ProtocolDocument build_document(const ProtocolTemplate& tmpl, const materials::Structure& structure);

std::string render_document(const ProtocolDocument& document);

std::string render_input(const ProtocolTemplate& tmpl, const materials::Structure& structure);

ProtocolDocument parse_input(std::string_view text);

enum class Severity { error, warning };

struct Finding {
    Severity severity = Severity::error;
    std::string code;
    std::string location;  // "SYSTEM.ecutwfc", "K_POINTS", "document"
    std::string message;
    bool operator==(const Finding&) const = default;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool has_errors() const;
    std::size_t error_count() const;
    nlohmann::json to_json() const;
};

ValidationReport validate_static(const ProtocolDocument& document, const kg::KnowledgeGraph& graph);

}  // namespace genius::protocol
