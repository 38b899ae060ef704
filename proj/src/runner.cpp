#include "genius/runner.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <csignal>
#include <cstring>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include "genius/prompts.hpp"
#include "genius/protocol.hpp"
#include "genius/retrieval.hpp"

extern char** environ;

namespace genius::runner {

namespace {

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    return text;
}

// Rotated through when a scripted failure carries no text of its own.
struct CannedFault {
    const char* routine;
    int code;
    const char* message;
};

constexpr std::array<CannedFault, 5> kCannedFaults{{
    {"c_bands", 1, "too many bands are not converged"},
    {"electrons", 1, "convergence NOT achieved after 100 iterations: stopping (check mixing_beta and conv_thr)"},
    {"cdiaghg", 5, "S matrix not positive definite (check ecutwfc and the pseudopotentials)"},
    {"efermig", 1, "internal error, cannot bracket Ef (check smearing and degauss)"},
    {"bfgs", 1, "bfgs history already reset at previous step: stopping (check ion_dynamics and trust_radius_min)"},
}};

std::string routine_for(const std::string& code) {
    if (code == "unknown-parameter" || code == "type-mismatch" || code == "misplaced-parameter" ||
        code == "duplicate-parameter")
        return "read_namelists";
    if (code == "missing-card" || code == "count-mismatch" || code == "unknown-species") return "read_cards";
    return "iosys";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::set<std::string>& stop_words() {
    static const std::set<std::string> words = {
        "the", "a",  "an", "of", "in", "on", "at", "to",   "for", "is",   "are",  "be",   "was", "and",  "or",
        "not", "no", "by", "it", "as", "with", "from", "this", "that", "error", "routine", "task", "check", "must",
        "cannot", "too", "after", "stopping", "previous", "step", "already", "internal", "read", "has", "have"};
    return words;
}

bool word_in(std::string_view text, std::string_view word) {
    auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    std::size_t pos = 0;
    while ((pos = text.find(word, pos)) != std::string_view::npos) {
        bool left = pos == 0 || !is_word(text[pos - 1]);
        bool right = pos + word.size() >= text.size() || !is_word(text[pos + word.size()]);
        if (left && right) return true;
        pos += 1;
    }
    return false;
}

}  // namespace

nlohmann::json RunOutcome::to_json() const {
    nlohmann::json j = {{"exit_code", exit_code}, {"stdout_tail", stdout_tail}, {"duration", duration},
                        {"success", success()}};
    j["crash_text"] = crash_text ? nlohmann::json(*crash_text) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json ErrorDescriptor::to_json() const {
    nlohmann::json j = {{"message", message}, {"keywords", keywords}};
    j["routine"] = routine ? nlohmann::json(*routine) : nlohmann::json(nullptr);
    return j;
}

std::vector<FaultStep> parse_fault_script(const nlohmann::json& script) {
    if (!script.is_array()) throw std::invalid_argument("fault script must be a JSON list");
    std::vector<FaultStep> out;
    int index = 0;
    for (const auto& item : script) {
        ++index;
        FaultStep step;
        std::string outcome;
        if (item.is_string()) {
            step.on_call = index;
            outcome = item.get<std::string>();
        } else if (item.is_object()) {
            step.on_call = item.at("on_call").get<int>();
            outcome = item.at("outcome").get<std::string>();
            step.crash_text = item.value("crash_text", "");
        } else {
            throw std::invalid_argument("fault script entries are objects or \"pass\"/\"fail\"");
        }
        if (outcome != "pass" && outcome != "fail") throw std::invalid_argument("fault outcome must be pass or fail");
        if (step.on_call < 1) throw std::invalid_argument("on_call counts from 1");
        step.fail = outcome == "fail";
        out.push_back(std::move(step));
    }
    return out;
}

std::string crash_report(std::string_view routine, int code, std::string_view message) {
    const std::string bar(" " + std::string(100, '%') + "\n");
    std::string out = bar;
    out += "     task #         0\n";
    out += "     Error in routine " + std::string(routine) + " (" + std::to_string(code) + "):\n";
    out += "     " + std::string(message) + "\n";
    out += bar;
    return out;
}

int SimulatedRunner::calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
}

RunOutcome SimulatedRunner::execute(const std::string& input_text, const std::filesystem::path& workdir) {
    int call;
    {
        std::lock_guard lock(mutex_);
        call = ++calls_;
    }
    if (input_text.empty()) throw RunnerError("empty input");
    if (!workdir.empty()) {
        std::filesystem::create_directories(workdir);
        std::ofstream(workdir / "pw.in") << input_text;
        std::filesystem::remove(workdir / "CRASH");
    }
    RunOutcome out;
    auto fail = [&](std::string text) {
        out.exit_code = 1;
        out.crash_text = std::move(text);
        if (!workdir.empty()) std::ofstream(workdir / "CRASH") << *out.crash_text;
        out.stdout_tail = *out.crash_text;
        return out;
    };

    auto scripted = std::find_if(script_.begin(), script_.end(), [&](const FaultStep& s) { return s.on_call == call; });
    if (scripted != script_.end()) {
        if (!scripted->fail) {
            out.stdout_tail = "JOB DONE.\n";
            return out;
        }
        if (!scripted->crash_text.empty()) return fail(scripted->crash_text);
        const auto& canned = kCannedFaults[static_cast<std::size_t>(call - 1) % kCannedFaults.size()];
        return fail(crash_report(canned.routine, canned.code, canned.message));
    }

    protocol::ProtocolDocument doc;
    try {
        doc = protocol::parse_input(input_text);
    } catch (const protocol::ParseError& e) {
        bool card = e.kind() == protocol::ParseErrorKind::card_columns;
        return fail(crash_report(card ? "read_cards" : "read_namelists", e.line(), e.what()));
    }
    auto report = protocol::validate_static(doc, *graph_);
    for (const auto& f : report.findings)
        if (f.severity == protocol::Severity::error)
            return fail(crash_report(routine_for(f.code), 1, f.code + " at " + f.location + ": " + f.message));
    out.stdout_tail = "JOB DONE.\n";
    return out;
}

RunOutcome ExternalRunner::execute(const std::string& input_text, const std::filesystem::path& workdir) {
    if (input_text.empty()) throw RunnerError("empty input");
    std::filesystem::create_directories(workdir);
    std::ofstream(workdir / "pw.in") << input_text;
    std::filesystem::remove(workdir / "CRASH");

    std::vector<std::string> argv_store{config_.binary};
    argv_store.insert(argv_store.end(), config_.args.begin(), config_.args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    argv.push_back(nullptr);

    const auto out_path = std::filesystem::absolute(workdir / "pw.out").string();
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);
    posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
    const auto dir = std::filesystem::absolute(workdir).string();
    posix_spawn_file_actions_addchdir_np(&actions, dir.c_str());
    pid_t pid = 0;
    int rc = posix_spawnp(&pid, config_.binary.c_str(), &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) throw RunnerError("cannot start " + config_.binary + ": " + std::strerror(rc));

    auto start = std::chrono::steady_clock::now();
    int status = 0;
    bool timed_out = false;
    while (true) {
        pid_t done = waitpid(pid, &status, WNOHANG);
        if (done == pid) break;
        if (std::chrono::steady_clock::now() - start > config_.timeout) {
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            timed_out = true;
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    RunOutcome out;
    out.duration = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string log = read_file(out_path);
    out.stdout_tail = log.size() > 4000 ? log.substr(log.size() - 4000) : log;
    if (timed_out) {
        out.exit_code = 124;
        out.crash_text = "timeout";
        return out;
    }
    out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
    if (std::filesystem::exists(workdir / "CRASH")) out.crash_text = read_file(workdir / "CRASH");
    return out;
}

std::optional<std::string> crash_routine(std::string_view crash_text) {
    static const std::regex modern(R"(Error in routine\s+([A-Za-z0-9_]+))");
    static const std::regex classic(R"(from\s+([A-Za-z0-9_]+)\s*:\s*error\s*#)");
    std::string text(crash_text);
    std::smatch m;
    if (std::regex_search(text, m, modern)) return m[1].str();
    if (std::regex_search(text, m, classic)) return m[1].str();
    return std::nullopt;
}

std::string crash_message(std::string_view crash_text) {
    static const std::regex noise(R"(^\s*(%+|task\s*#.*|Error in routine.*|from\s+\S+\s*:\s*error\s*#.*)\s*$)");
    std::string out;
    std::istringstream in{std::string(crash_text)};
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty() || std::regex_match(line, noise)) continue;
        if (!out.empty()) out += ' ';
        out += std::string(trim(line));
    }
    return out.empty() ? std::string(trim(crash_text)) : out;
}

std::vector<std::string> fallback_keywords(std::string_view message) {
    std::vector<std::string> out;
    for (auto& tok : retrieval::tokenize(message)) {
        if (stop_words().count(tok)) continue;
        if (std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) continue;
        if (std::find(out.begin(), out.end(), tok) == out.end()) out.push_back(tok);
    }
    if (out.empty())
        for (auto& tok : retrieval::tokenize(message))
            if (std::find(out.begin(), out.end(), tok) == out.end()) out.push_back(tok);
    if (out.empty() && !trim(message).empty()) out.emplace_back(trim(message));
    return out;
}

ErrorDescriptor parse_crash(std::string_view crash_text, llm::Gateway* gateway, const llm::ModelRef& model,
                            const kg::KnowledgeGraph* graph) {
    if (trim(crash_text).empty()) throw std::invalid_argument("crash text is empty");
    ErrorDescriptor d;
    d.routine = crash_routine(crash_text);
    d.message = crash_message(crash_text);

    auto add = [&](const std::string& k) {
        if (!k.empty() && std::find(d.keywords.begin(), d.keywords.end(), k) == d.keywords.end()) d.keywords.push_back(k);
    };
    bool from_model = false;
    if (gateway) {
        try {
            auto exchange = gateway->run_template(model, "error_keywords", {{"error", std::string(crash_text)}});
            auto ex = llm::extract_structured(exchange.response_text, llm::prompt_template("error_keywords").schema,
                                              "error_keywords");
            for (const auto& k : ex.value.at("keywords")) add(std::string(trim(k.get<std::string>())));
            from_model = !d.keywords.empty();
        } catch (const std::exception&) {
            d.keywords.clear();
        }
    }
    if (!from_model)
        for (const auto& k : fallback_keywords(d.message)) add(k);
    if (d.routine) add(*d.routine);
    if (graph)
        for (const auto& node : graph->nodes())
            if (word_in(d.message, node.name)) add(node.name);
    return d;
}

}  // namespace genius::runner
