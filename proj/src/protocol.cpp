#include "genius/protocol.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "genius/elements.hpp"

namespace genius::protocol {

namespace {

constexpr std::array<std::string_view, 11> kCardNames = {
    "ATOMIC_SPECIES", "ATOMIC_POSITIONS", "K_POINTS",  "ADDITIONAL_K_POINTS", "CELL_PARAMETERS", "CONSTRAINTS",
    "OCCUPATIONS",    "ATOMIC_VELOCITIES", "ATOMIC_FORCES", "SOLVENTS",       "HUBBARD"};

constexpr std::array<std::string_view, 11> kPerSpecies = {
    "starting_magnetization", "starting_charge", "angle1",    "angle2",         "Hubbard_alpha", "Hubbard_beta",
    "london_c6",              "london_rvdw",     "solute_lj", "solute_epsilon", "solute_sigma"};

// Lattice given by CELL_PARAMETERS in angstrom, so these would contradict ibrav = 0.
constexpr std::array<std::string_view, 7> kLatticeScalars = {"celldm", "A", "B", "C", "cosAB", "cosAC", "cosBC"};

constexpr std::array<std::string_view, 3> kStructureScalars = {"ibrav", "nat", "ntyp"};

std::string upper(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    return text;
}

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& list, std::string_view name) {
    return std::find(list.begin(), list.end(), name) != list.end();
}

bool is_card_name(std::string_view name) { return contains(kCardNames, name); }

bool is_namelist_name(std::string_view name) {
    return std::find(std::begin(kNamelistOrder), std::end(kNamelistOrder), name) != std::end(kNamelistOrder);
}

bool is_integer_token(std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string strip_comment(std::string_view line) {
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '\'' || c == '"') {
            quote = c;
        } else if (c == '!') {
            return std::string(line.substr(0, i));
        }
    }
    return std::string(line);
}

Card k_points_card(const Value& value) {
    if (!std::holds_alternative<std::string>(value)) throw RenderError("K_POINTS value must be text");
    const auto& text = std::get<std::string>(value);
    Card card{"K_POINTS", "", {}};
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
            if (!trim(line).empty()) lines.emplace_back(trim(line));
    }
    if (lines.empty()) throw RenderError("empty K_POINTS value");
    auto head = split_ws(lines.front());
    std::string first = lower(head.front());
    if (lines.size() == 1 && head.size() == 1 && first == "gamma") {
        card.option = "gamma";
        return card;
    }
    if (first == "automatic") head.erase(head.begin());
    if (lines.size() == 1 && (head.size() == 3 || head.size() == 6) &&
        std::all_of(head.begin(), head.end(), [](const std::string& t) { return is_integer_token(t); })) {
        card.option = "automatic";
        if (head.size() == 3) head.insert(head.end(), {"0", "0", "0"});
        card.rows.push_back(head);
        return card;
    }
    // explicit list: option line, count, then "kx ky kz w" rows
    if (head.size() != 1 || is_integer_token(head.front()))
        throw RenderError("cannot interpret K_POINTS value '" + text + "'");
    card.option = first;
    for (std::size_t i = 1; i < lines.size(); ++i) card.rows.push_back(split_ws(lines[i]));
    return card;
}

Card generic_card(const std::string& name, const Value& value) {
    Card card{name, "", {}};
    std::string text = std::holds_alternative<std::string>(value) ? std::get<std::string>(value) : format_value(value);
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (first && tokens.size() == 1 &&
            std::all_of(tokens[0].begin(), tokens[0].end(), [](unsigned char c) { return std::isalpha(c) || c == '_'; })) {
            card.option = lower(tokens[0]);
        } else {
            card.rows.push_back(tokens);
        }
        first = false;
    }
    return card;
}

}  // namespace

const Value* Namelist::get(std::string_view key) const {
    for (const auto& a : parameters)
        if (a.key == key) return &a.value;
    return nullptr;
}

const Namelist* ProtocolDocument::namelist(std::string_view name) const {
    for (const auto& n : namelists)
        if (n.name == name) return &n;
    return nullptr;
}

const Card* ProtocolDocument::card(std::string_view name) const {
    for (const auto& c : cards)
        if (c.name == name) return &c;
    return nullptr;
}

const Value* ProtocolDocument::get(std::string_view section, std::string_view key) const {
    const auto* nl = namelist(section);
    return nl ? nl->get(key) : nullptr;
}

nlohmann::json ProtocolDocument::to_json() const {
    nlohmann::json j = {{"namelists", nlohmann::json::array()}, {"cards", nlohmann::json::array()}};
    for (const auto& nl : namelists) {
        nlohmann::json params = nlohmann::json::array();
        for (const auto& a : nl.parameters) params.push_back({a.key, value_to_json(a.value)});
        j["namelists"].push_back({{"name", nl.name}, {"parameters", params}});
    }
    for (const auto& c : cards) j["cards"].push_back({{"name", c.name}, {"option", c.option}, {"rows", c.rows}});
    return j;
}

std::string_view to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::unterminated_namelist: return "unterminated-namelist";
        case ParseErrorKind::unknown_section: return "unknown-section";
        case ParseErrorKind::malformed_assignment: return "malformed-assignment";
        case ParseErrorKind::card_columns: return "card-columns";
        case ParseErrorKind::unexpected_line: return "unexpected-line";
    }
    return "parse-error";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      line_(line) {}

bool moves_ions(std::string_view calculation) {
    return calculation == "relax" || calculation == "md" || calculation == "vc-relax" || calculation == "vc-md";
}

bool variable_cell(std::string_view calculation) { return calculation == "vc-relax" || calculation == "vc-md"; }

bool is_per_species(std::string_view name) { return contains(kPerSpecies, name); }

std::string base_name(std::string_view key) {
    auto paren = key.find('(');
    return std::string(trim(key.substr(0, paren)));
}

ProtocolDocument build_document(const ProtocolTemplate& tmpl, const materials::Structure& structure) {
    if (structure.species.empty()) throw RenderError("structure has no atoms");
    const std::string calc = tmpl.calculation();
    const auto types = structure.species_types();

    std::map<std::string, std::vector<const EvaluatedParameter*>> by_section;
    std::vector<const EvaluatedParameter*> card_params;
    for (const auto& p : tmpl.parameters) {
        if (!p.value) continue;
        if (p.section.empty())
            card_params.push_back(&p);
        else
            by_section[p.section].push_back(&p);
    }
    for (const auto& [section, params] : by_section)
        if (!is_namelist_name(section)) throw RenderError("unknown namelist " + section + " for " + params.front()->node_name);

    ProtocolDocument doc;
    for (std::string_view name : kNamelistOrder) {
        bool include = name == "CONTROL" || name == "SYSTEM" || name == "ELECTRONS" ||
                       (name == "IONS" && moves_ions(calc)) || (name == "CELL" && variable_cell(calc)) ||
                       ((name == "FCP" || name == "RISM") && by_section.count(std::string(name)));
        if (!include) continue;
        Namelist nl{std::string(name), {}};
        if (name == "SYSTEM") {
            nl.parameters.push_back({"ibrav", Value{std::int64_t{0}}});
            nl.parameters.push_back({"nat", Value{static_cast<std::int64_t>(structure.species.size())}});
            nl.parameters.push_back({"ntyp", Value{static_cast<std::int64_t>(types.size())}});
        }
        for (const auto* p : by_section[std::string(name)]) {
            if (name == "SYSTEM" && (contains(kStructureScalars, p->node_name) || contains(kLatticeScalars, p->node_name)))
                continue;
            if (is_per_species(p->node_name)) {
                for (std::size_t i = 0; i < types.size(); ++i)
                    nl.parameters.push_back({p->node_name + "(" + std::to_string(i + 1) + ")", *p->value});
            } else {
                nl.parameters.push_back({p->node_name, *p->value});
            }
        }
        doc.namelists.push_back(std::move(nl));
    }

    Card species{"ATOMIC_SPECIES", "", {}};
    for (const auto& el : types) {
        const auto* info = find_element(el);
        if (!info) throw RenderError("unknown element " + el);
        std::string pseudo;
        if (auto it = structure.pseudopotentials.find(el); it != structure.pseudopotentials.end())
            pseudo = it->second;
        else if (auto h = tmpl.pseudopotential_hints.find(el); h != tmpl.pseudopotential_hints.end())
            pseudo = h->second;
        else
            throw RenderError("no pseudopotential for " + el);
        species.rows.push_back({el, format_real(info->mass), pseudo});
    }
    doc.cards.push_back(std::move(species));

    Card positions{"ATOMIC_POSITIONS", "crystal", {}};
    for (std::size_t i = 0; i < structure.species.size(); ++i) {
        const auto& p = structure.positions.at(i);
        positions.rows.push_back({structure.species[i], format_real(p[0]), format_real(p[1]), format_real(p[2])});
    }
    doc.cards.push_back(std::move(positions));

    const auto* kp = tmpl.find("K_POINTS");
    if (!kp || !kp->value) throw RenderError("template has no K_POINTS input and the card has no default");
    doc.cards.push_back(k_points_card(*kp->value));

    Card cell{"CELL_PARAMETERS", "angstrom", {}};
    for (const auto& row : structure.cell) cell.rows.push_back({format_real(row[0]), format_real(row[1]), format_real(row[2])});
    doc.cards.push_back(std::move(cell));

    for (const auto* p : card_params) {
        if (p->node_name == "K_POINTS" || p->node_name == "ATOMIC_SPECIES" || p->node_name == "ATOMIC_POSITIONS" ||
            p->node_name == "CELL_PARAMETERS")
            continue;
        if (!is_card_name(p->node_name)) throw RenderError("unknown card " + p->node_name);
        doc.cards.push_back(generic_card(p->node_name, *p->value));
    }
    return doc;
}

std::string render_document(const ProtocolDocument& document) {
    std::string out;
    for (const auto& nl : document.namelists) {
        out += "&" + nl.name + "\n";
        for (const auto& a : nl.parameters) out += "  " + a.key + " = " + format_value(a.value) + "\n";
        out += "/\n";
    }
    for (const auto& card : document.cards) {
        out += card.name;
        if (!card.option.empty()) out += " " + card.option;
        out += "\n";
        for (const auto& row : card.rows) {
            out += " ";
            for (const auto& tok : row) out += " " + tok;
            out += "\n";
        }
    }
    return out;
}

std::string render_input(const ProtocolTemplate& tmpl, const materials::Structure& structure) {
    return render_document(build_document(tmpl, structure));
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ProtocolDocument run() {
        std::size_t start = 0;
        int lineno = 0;
        while (start <= text_.size()) {
            auto end = text_.find('\n', start);
            if (end == std::string_view::npos) end = text_.size();
            std::string_view raw = text_.substr(start, end - start);
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            ++lineno;
            line(lineno, raw);
            if (end == text_.size()) break;
            start = end + 1;
        }
        if (in_namelist_)
            throw ParseError(ParseErrorKind::unterminated_namelist, last_content_,
                             "namelist &" + doc_.namelists.back().name + " is missing its closing '/'");
        finish_card();
        return std::move(doc_);
    }

private:
    void line(int lineno, std::string_view raw) {
        std::string stripped = strip_comment(raw);
        std::string_view t = trim(stripped);
        if (t.empty()) return;

        if (in_namelist_) {
            // OCCUPATIONS is both a card and a SYSTEM parameter; only a line without '=' opens a card
            if (t.front() == '&' || (is_card_name(card_header(t)) && t.find('=') == std::string_view::npos))
                throw ParseError(ParseErrorKind::unterminated_namelist, last_content_,
                                 "namelist &" + doc_.namelists.back().name + " is missing its closing '/'");
            last_content_ = lineno;
            assignments(lineno, t);
            return;
        }
        if (t.front() == '&') {
            finish_card();
            std::size_t n = 1;
            while (n < t.size() && (std::isalnum(static_cast<unsigned char>(t[n])) || t[n] == '_')) ++n;
            std::string name = upper(t.substr(1, n - 1));
            if (!is_namelist_name(name)) throw ParseError(ParseErrorKind::unknown_section, lineno, "unknown namelist &" + name);
            doc_.namelists.push_back({name, {}});
            in_namelist_ = true;
            last_content_ = lineno;
            auto rest = trim(t.substr(n));
            if (!rest.empty()) assignments(lineno, rest);
            return;
        }
        auto header = card_header(t);
        if (is_card_name(header)) {
            finish_card();
            Card card{header, "", {}};
            auto rest = trim(t.substr(t.find_first_of(" \t{(") == std::string_view::npos ? t.size()
                                                                                          : t.find_first_of(" \t{(")));
            std::string option(rest);
            option.erase(std::remove_if(option.begin(), option.end(),
                                        [](char c) { return c == '{' || c == '}' || c == '(' || c == ')'; }),
                         option.end());
            card.option = lower(trim(option));
            doc_.cards.push_back(std::move(card));
            card_line_ = lineno;
            row_lines_.clear();
            in_card_ = true;
            return;
        }
        if (in_card_) {
            doc_.cards.back().rows.push_back(split_ws(t));
            row_lines_.push_back(lineno);
            return;
        }
        throw ParseError(ParseErrorKind::unexpected_line, lineno, "unexpected text '" + std::string(t) + "'");
    }

    static std::string card_header(std::string_view t) {
        auto end = t.find_first_of(" \t{(");
        return upper(t.substr(0, end));
    }

    void assignments(int lineno, std::string_view text) {
        auto malformed = [&](const std::string& why) {
            throw ParseError(ParseErrorKind::malformed_assignment, lineno, why + " in '" + std::string(text) + "'");
        };
        std::size_t pos = 0;
        auto skip_ws = [&] {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        };
        auto& params = doc_.namelists.back().parameters;
        while (true) {
            while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
            if (pos >= text.size()) return;
            if (text[pos] == '/') {
                if (!trim(text.substr(pos + 1)).empty()) malformed("text after '/'");
                in_namelist_ = false;
                return;
            }
            std::size_t k0 = pos;
            if (!(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) malformed("expected a name");
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
            std::string key(text.substr(k0, pos - k0));
            skip_ws();
            if (pos < text.size() && text[pos] == '(') {
                auto close = text.find(')', pos);
                if (close == std::string_view::npos) malformed("unclosed index");
                std::string index;
                for (char c : text.substr(pos + 1, close - pos - 1))
                    if (!std::isspace(static_cast<unsigned char>(c))) index += c;
                if (index.empty() || !std::all_of(index.begin(), index.end(),
                                                  [](unsigned char c) { return std::isdigit(c) || c == ','; }))
                    malformed("bad index");
                key += "(" + index + ")";
                pos = close + 1;
                skip_ws();
            }
            if (pos >= text.size() || text[pos] != '=') malformed("expected '=' after " + key);
            ++pos;
            skip_ws();
            if (pos >= text.size()) malformed("missing value for " + key);
            std::size_t v0 = pos;
            char q = text[pos];
            if (q == '\'' || q == '"') {
                ++pos;
                while (true) {
                    if (pos >= text.size()) malformed("unterminated string");
                    if (text[pos] == q) {
                        if (pos + 1 < text.size() && text[pos + 1] == q) {
                            pos += 2;
                            continue;
                        }
                        ++pos;
                        break;
                    }
                    ++pos;
                }
            } else {
                while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != ',' &&
                       text[pos] != '/')
                    ++pos;
            }
            auto value = parse_literal(text.substr(v0, pos - v0));
            if (!value) malformed("bad value '" + std::string(text.substr(v0, pos - v0)) + "' for " + key);
            params.push_back({key, *value});
        }
    }

    void finish_card() {
        if (!in_card_) return;
        in_card_ = false;
        const Card& card = doc_.cards.back();
        auto columns = [&](std::size_t row, const std::string& expected) {
            throw ParseError(ParseErrorKind::card_columns, row_lines_.at(row),
                             card.name + " row has " + std::to_string(card.rows[row].size()) + " columns, expected " +
                                 expected);
        };
        auto count = [&](const std::string& expected) {
            throw ParseError(ParseErrorKind::card_columns, card_line_,
                             card.name + " has " + std::to_string(card.rows.size()) + " rows, expected " + expected);
        };
        if (card.name == "ATOMIC_SPECIES") {
            for (std::size_t i = 0; i < card.rows.size(); ++i)
                if (card.rows[i].size() != 3) columns(i, "3");
        } else if (card.name == "ATOMIC_POSITIONS") {
            for (std::size_t i = 0; i < card.rows.size(); ++i)
                if (card.rows[i].size() != 4 && card.rows[i].size() != 7) columns(i, "4 or 7");
        } else if (card.name == "CELL_PARAMETERS") {
            for (std::size_t i = 0; i < card.rows.size(); ++i)
                if (card.rows[i].size() != 3) columns(i, "3");
            if (card.rows.size() != 3) count("3");
        } else if (card.name == "K_POINTS") {
            if (card.option == "gamma") {
                if (!card.rows.empty()) count("0");
            } else if (card.option == "automatic") {
                if (card.rows.size() != 1) count("1");
                if (card.rows[0].size() != 6) columns(0, "6");
            } else {
                if (card.rows.empty()) count("at least 1");
                if (card.rows[0].size() != 1) columns(0, "1");
                for (std::size_t i = 1; i < card.rows.size(); ++i)
                    if (card.rows[i].size() != 4) columns(i, "4");
            }
        }
    }

    std::string_view text_;
    ProtocolDocument doc_;
    bool in_namelist_ = false;
    bool in_card_ = false;
    int last_content_ = 0;
    int card_line_ = 0;
    std::vector<int> row_lines_;
};

}  // namespace

ProtocolDocument parse_input(std::string_view text) { return Parser(text).run(); }

bool ValidationReport::has_errors() const { return error_count() > 0; }

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::error; }));
}

nlohmann::json ValidationReport::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : findings)
        out.push_back({{"severity", f.severity == Severity::error ? "error" : "warning"},
                       {"code", f.code},
                       {"location", f.location},
                       {"message", f.message}});
    return out;
}

ValidationReport validate_static(const ProtocolDocument& document, const kg::KnowledgeGraph& graph) {
    std::vector<std::pair<long, Finding>> found;
    auto add = [&](long pos, Severity sev, std::string code, std::string location, std::string message) {
        found.push_back({pos, Finding{sev, std::move(code), std::move(location), std::move(message)}});
    };

    std::map<std::string, const kg::KgNode*> folded;
    for (const auto& n : graph.nodes()) folded.emplace(lower(n.name), &n);
    auto lookup = [&](const std::string& name) -> const kg::KgNode* {
        if (const auto* n = graph.find(name)) return n;
        auto it = folded.find(lower(name));
        return it == folded.end() ? nullptr : it->second;
    };

    std::string calc = "scf";
    if (const auto* v = document.get("CONTROL", "calculation"); v && std::holds_alternative<std::string>(*v))
        calc = std::get<std::string>(*v);

    std::set<std::string> present;  // node names seen in their own namelist
    for (std::size_t i = 0; i < document.namelists.size(); ++i) {
        const auto& nl = document.namelists[i];
        std::set<std::string> keys;
        for (std::size_t j = 0; j < nl.parameters.size(); ++j) {
            const auto& a = nl.parameters[j];
            long pos = static_cast<long>(i) * 10000 + static_cast<long>(j);
            std::string location = nl.name + "." + a.key;
            if (!keys.insert(lower(a.key)).second)
                add(pos, Severity::warning, "duplicate-parameter", location, a.key + " is set more than once");
            const auto* node = lookup(base_name(a.key));
            if (!node) {
                add(pos, Severity::error, "unknown-parameter", location,
                    "'" + base_name(a.key) + "' is not a pw.x input parameter");
                continue;
            }
            if (node->kind == kg::NodeKind::card || node->namelist.value_or("") != nl.name) {
                add(pos, Severity::error, "misplaced-parameter", location,
                    node->name + " belongs to " +
                        (node->kind == kg::NodeKind::card ? std::string("the card section") : "&" + *node->namelist));
                continue;
            }
            present.insert(node->name);
            if (!conforms(a.value, node->data_type)) {
                add(pos, Severity::error, "type-mismatch", location,
                    node->name + " expects " + std::string(kg::to_string(node->data_type)) + ", got " +
                        std::string(kg::to_string(value_type(a.value))) + " " + format_value(a.value));
                continue;
            }
            if (node->allowed_values && !node->allowed_values->empty()) {
                std::string text;
                if (std::holds_alternative<std::string>(a.value))
                    text = lower(std::get<std::string>(a.value));
                else if (std::holds_alternative<std::int64_t>(a.value))
                    text = std::to_string(std::get<std::int64_t>(a.value));
                else
                    continue;
                bool ok = std::any_of(node->allowed_values->begin(), node->allowed_values->end(),
                                      [&](const std::string& allowed) { return lower(allowed) == text; });
                if (!ok)
                    add(pos, Severity::error, "value-not-allowed", location,
                        format_value(a.value) + " is not an allowed value of " + node->name);
            }
        }
    }

    long doc_pos = 2'000'000;
    for (std::string_view name : {"CONTROL", "SYSTEM", "ELECTRONS"})
        if (!document.namelist(name))
            add(doc_pos++, Severity::error, "missing-namelist", std::string(name), "&" + std::string(name) + " is required");
    auto section_rule = [&](std::string_view name, bool needed) {
        bool has = document.namelist(name) != nullptr;
        if (needed && !has)
            add(doc_pos++, Severity::error, "missing-namelist", std::string(name),
                "calculation '" + calc + "' requires &" + std::string(name));
        if (!needed && has) {
            long pos = 0;
            for (std::size_t i = 0; i < document.namelists.size(); ++i)
                if (document.namelists[i].name == name) pos = static_cast<long>(i) * 10000;
            add(pos, Severity::warning, "unexpected-namelist", std::string(name),
                "&" + std::string(name) + " is ignored for calculation '" + calc + "'");
        }
    };
    section_rule("IONS", moves_ions(calc));
    section_rule("CELL", variable_cell(calc));

    for (const auto& node : graph.nodes()) {
        if (!node.required) continue;
        if (node.kind == kg::NodeKind::card) {
            if (!document.card(node.name))
                add(doc_pos++, Severity::error, "missing-card", node.name, node.name + " card is required");
        } else if (!present.count(node.name)) {
            add(doc_pos++, Severity::error, "missing-required", *node.namelist + "." + node.name,
                node.name + " is required in &" + *node.namelist);
        }
    }
    if (const auto* ibrav = document.get("SYSTEM", "ibrav");
        ibrav && std::holds_alternative<std::int64_t>(*ibrav) && std::get<std::int64_t>(*ibrav) == 0 &&
        !document.card("CELL_PARAMETERS"))
        add(doc_pos++, Severity::error, "missing-card", "CELL_PARAMETERS", "ibrav = 0 requires CELL_PARAMETERS");

    for (std::size_t c = 0; c < document.cards.size(); ++c) {
        const auto& card = document.cards[c];
        long pos = 1'000'000 + static_cast<long>(c);
        if (card.name == "ATOMIC_POSITIONS") {
            if (const auto* nat = document.get("SYSTEM", "nat"); nat && std::holds_alternative<std::int64_t>(*nat) &&
                                                                 std::get<std::int64_t>(*nat) !=
                                                                     static_cast<std::int64_t>(card.rows.size()))
                add(pos, Severity::error, "count-mismatch", card.name,
                    "nat = " + format_value(*nat) + " but ATOMIC_POSITIONS lists " + std::to_string(card.rows.size()) +
                        " atoms");
            if (const auto* species = document.card("ATOMIC_SPECIES")) {
                std::set<std::string> labels;
                for (const auto& row : species->rows) labels.insert(row.at(0));
                for (const auto& row : card.rows)
                    if (!labels.count(row.at(0))) {
                        add(pos, Severity::error, "unknown-species", card.name,
                            "atom label " + row.at(0) + " is not declared in ATOMIC_SPECIES");
                        break;
                    }
            }
        } else if (card.name == "ATOMIC_SPECIES") {
            if (const auto* ntyp = document.get("SYSTEM", "ntyp");
                ntyp && std::holds_alternative<std::int64_t>(*ntyp) &&
                std::get<std::int64_t>(*ntyp) != static_cast<std::int64_t>(card.rows.size()))
                add(pos, Severity::error, "count-mismatch", card.name,
                    "ntyp = " + format_value(*ntyp) + " but ATOMIC_SPECIES lists " + std::to_string(card.rows.size()) +
                        " species");
        }
    }

    std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ValidationReport report;
    for (auto& [pos, f] : found) report.findings.push_back(std::move(f));
    return report;
}

}  // namespace genius::protocol
