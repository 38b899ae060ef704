#include "genius/llm.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "genius/prompts.hpp"
#include "genius/retrieval.hpp"

namespace genius::llm {

using nlohmann::json;

namespace {

thread_local int t_last_attempts = 0;

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

ScriptedProvider::Entry parse_entry(const json& e) {
    ScriptedProvider::Entry entry;
    if (e.contains("template")) entry.template_id = e.at("template").get<std::string>();
    if (e.contains("bindings_hash")) entry.bindings_hash = e.at("bindings_hash").get<std::string>();
    if (e.contains("prompt_hash")) entry.prompt_hash = e.at("prompt_hash").get<std::string>();
    if (e.contains("model")) entry.model_id = e.at("model").get<std::string>();
    if (e.contains("when"))
        for (const auto& [k, v] : e.at("when").items()) entry.when[k] = v.get<std::string>();
    if (e.contains("response")) {
        const auto& r = e.at("response");
        entry.response = r.is_string() ? r.get<std::string>() : r.dump();
    }
    if (e.contains("echo_binding")) entry.echo_binding = e.at("echo_binding").get<std::string>();
    entry.fence = e.value("fence", false);
    return entry;
}

bool binding_contains(const json& bindings, const std::string& name, const std::string& needle) {
    auto it = bindings.find(name);
    if (it == bindings.end()) return false;
    std::string text = it->is_string() ? it->get<std::string>() : it->dump();
    if (!needle.empty() && needle.front() == '=') return text == std::string_view(needle).substr(1);
    return text.find(needle) != std::string::npos;
}

}  // namespace

std::string_view to_string(Role role) {
    switch (role) {
        case Role::worker: return "worker";
        case Role::referee: return "referee";
        case Role::interface: return "interface";
        case Role::scorer: return "scorer";
        case Role::error_keyworder: return "error_keyworder";
    }
    return "worker";
}

std::optional<Role> parse_role(std::string_view text) {
    for (auto r : {Role::worker, Role::referee, Role::interface, Role::scorer, Role::error_keyworder})
        if (to_string(r) == text) return r;
    return std::nullopt;
}

json ModelRef::to_json() const {
    return {{"provider_id", provider_id}, {"model_id", model_id}, {"role", to_string(role)}};
}

void ModelHierarchy::validate() const {
    if (models.empty()) throw std::invalid_argument("model hierarchy is empty");
    if (retries_per_model <= 0) throw std::invalid_argument("retries_per_model must be positive");
    for (const auto& m : models)
        if (m.provider_id.empty() || m.model_id.empty()) throw std::invalid_argument("model reference with empty identifier");
}

ModelRef parse_model_spec(std::string_view spec, std::string_view default_provider, Role role) {
    auto slash = spec.find('/');
    if (slash == std::string_view::npos) return {std::string(default_provider), std::string(spec), role};
    return {std::string(spec.substr(0, slash)), std::string(spec.substr(slash + 1)), role};
}

std::string stable_hash(const json& bindings) {
    return hex64(retrieval::fnv1a64(bindings.dump()));
}

std::string prompt_hash(std::string_view system_prompt, std::string_view user_prompt) {
    std::string joined(system_prompt);
    joined.push_back('\0');
    joined.append(user_prompt);
    return hex64(retrieval::fnv1a64(joined));
}

ScriptedProvider::ScriptedProvider(std::vector<Entry> entries, std::optional<std::string> fallback)
    : entries_(std::move(entries)), fallback_(std::move(fallback)) {}

ScriptedProvider ScriptedProvider::from_json(const json& catalog) {
    ScriptedProvider provider;
    if (!catalog.is_object()) throw std::invalid_argument("scripted catalog must be a JSON object");
    if (catalog.contains("entries") || catalog.contains("parameter_values")) {
        for (const auto& e : catalog.value("entries", json::array())) provider.add(parse_entry(e));
        if (catalog.contains("parameter_values"))
            for (const auto& [name, value] : catalog.at("parameter_values").items()) {
                Entry entry;
                entry.template_id = "parameter_evaluate";
                entry.when["parameter"] = "=" + name;
                entry.response = json{{"value", value}, {"rationale", "catalog value"}}.dump();
                provider.add(std::move(entry));
            }
        if (catalog.contains("default") && catalog.at("default").is_string())
            provider.fallback_ = catalog.at("default").get<std::string>();
        return provider;
    }
    // Plain form: "template:hash", "prompt:hash", "template" or "*" -> response text.
    for (const auto& [key, value] : catalog.items()) {
        std::string response = value.is_string() ? value.get<std::string>() : value.dump();
        if (key == "*") {
            provider.fallback_ = response;
            continue;
        }
        Entry entry;
        entry.response = response;
        auto colon = key.find(':');
        if (colon == std::string::npos) {
            entry.template_id = key;
        } else if (key.substr(0, colon) == "prompt") {
            entry.prompt_hash = key.substr(colon + 1);
        } else {
            entry.template_id = key.substr(0, colon);
            entry.bindings_hash = key.substr(colon + 1);
        }
        provider.add(std::move(entry));
    }
    return provider;
}

ScriptedProvider ScriptedProvider::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scripted catalog " + path);
    return from_json(json::parse(in));
}

void ScriptedProvider::add(Entry entry) {
    std::lock_guard lock(*mutex_);
    entries_.push_back(std::move(entry));
}

void ScriptedProvider::merge(const ScriptedProvider& other) {
    std::vector<Entry> copy;
    std::optional<std::string> other_fallback;
    {
        std::lock_guard lock(*other.mutex_);
        copy = other.entries_;
        other_fallback = other.fallback_;
    }
    std::lock_guard lock(*mutex_);
    for (auto& e : copy) entries_.push_back(std::move(e));
    if (!fallback_) fallback_ = other_fallback;
}

std::size_t ScriptedProvider::calls() const {
    std::lock_guard lock(*mutex_);
    return calls_;
}

std::optional<std::string> ScriptedProvider::lookup(const ModelRef& model, const ChatRequest& request) const {
    const std::string bhash = request.template_id ? stable_hash(request.bindings) : std::string{};
    const std::string phash = prompt_hash(request.system_prompt, request.user_prompt);

    auto respond = [&](const Entry& e) -> std::string {
        if (!e.echo_binding) return e.response;
        auto it = request.bindings.find(*e.echo_binding);
        std::string text = it == request.bindings.end() ? std::string{} : (it->is_string() ? it->get<std::string>() : it->dump());
        return e.fence ? "```\n" + text + (text.ends_with('\n') ? "" : "\n") + "```" : text;
    };
    auto model_ok = [&](const Entry& e) { return !e.model_id || *e.model_id == model.model_id; };

    for (const auto& e : entries_)
        if (e.bindings_hash && request.template_id && e.template_id == request.template_id && *e.bindings_hash == bhash &&
            model_ok(e))
            return respond(e);
    for (const auto& e : entries_)
        if (e.prompt_hash && *e.prompt_hash == phash && model_ok(e)) return respond(e);
    for (const auto& e : entries_) {
        if (e.bindings_hash || e.prompt_hash || e.when.empty() || !model_ok(e)) continue;
        if (e.template_id && e.template_id != request.template_id) continue;
        bool all = true;
        for (const auto& [name, needle] : e.when) all = all && binding_contains(request.bindings, name, needle);
        if (all) return respond(e);
    }
    for (const auto& e : entries_)
        if (e.template_id && e.template_id == request.template_id && !e.bindings_hash && !e.prompt_hash &&
            e.when.empty() && model_ok(e))
            return respond(e);
    return fallback_;
}

ChatExchange ScriptedProvider::complete(const ModelRef& model, const ChatRequest& request) {
    std::optional<std::string> response;
    {
        std::lock_guard lock(*mutex_);
        ++calls_;
        response = lookup(model, request);
    }
    if (!response)
        throw ProviderError("scripted catalog has no response for template '" + request.template_id.value_or("<none>") +
                            "' (bindings " + stable_hash(request.bindings) + ")");
    return {request.system_prompt, request.user_prompt, *response, std::nullopt, std::chrono::milliseconds{0}};
}

ChatExchange HttpChatProvider::complete(const ModelRef& model, const ChatRequest& request) {
    auto start = std::chrono::steady_clock::now();
    httplib::Client client(config_.base_url);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    client.set_connection_timeout(std::chrono::seconds(std::min<long long>(secs.count(), 10)));
    client.set_read_timeout(secs);
    client.set_write_timeout(secs);

    json body = {{"model", model.model_id},
                 {"temperature", request.decoding.temperature},
                 {"max_tokens", request.decoding.max_tokens},
                 {"messages",
                  json::array({{{"role", "system"}, {"content", request.system_prompt}},
                               {{"role", "user"}, {"content", request.user_prompt}}})}};
    httplib::Headers headers{{"Authorization", "Bearer " + config_.api_key}};
    auto result = client.Post(config_.path, headers, body.dump(), "application/json");
    if (!result) {
        auto err = result.error();
        auto msg = "chat request to " + config_.base_url + " failed: " + httplib::to_string(err);
        if (err == httplib::Error::Read || err == httplib::Error::Write) throw TimeoutError(msg);
        throw TransportError(msg);
    }
    const auto status = result->status;
    if (status == 401 || status == 403) throw AuthError("provider rejected credential (HTTP " + std::to_string(status) + ")");
    if (status == 429) throw RateLimitError("provider rate limit (HTTP 429)");
    if (status == 408 || status == 504) throw TimeoutError("provider timeout (HTTP " + std::to_string(status) + ")");
    if (status >= 500) throw TransportError("provider unavailable (HTTP " + std::to_string(status) + ")");
    if (status != 200) throw ProviderError("provider error (HTTP " + std::to_string(status) + "): " + result->body);

    json reply;
    try {
        reply = json::parse(result->body);
    } catch (const json::parse_error&) {
        throw ProviderError("provider returned non-JSON body");
    }
    if (reply.contains("error")) throw ProviderError("provider error payload: " + reply["error"].dump());
    ChatExchange exchange{request.system_prompt, request.user_prompt, {}, std::nullopt, {}};
    try {
        exchange.response_text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception&) {
        throw ProviderError("provider reply has no choices[0].message.content");
    }
    if (reply.contains("usage")) {
        const auto& u = reply["usage"];
        exchange.token_usage = TokenUsage{u.value("prompt_tokens", 0), u.value("completion_tokens", 0)};
    }
    exchange.latency =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return exchange;
}

std::string credential_variable(std::string_view provider_id) {
    std::string name = "GENIUS_API_KEY_";
    for (unsigned char c : provider_id) name.push_back(std::isalnum(c) ? static_cast<char>(std::toupper(c)) : '_');
    return name;
}

std::optional<std::string> credential_for(std::string_view provider_id) {
    const char* value = std::getenv(credential_variable(provider_id).c_str());
    if (value == nullptr || *value == '\0') return std::nullopt;
    return std::string(value);
}

void Gateway::register_provider(const std::string& provider_id, std::shared_ptr<Provider> provider) {
    if (provider->serialize_calls()) serial_locks_[provider_id] = std::make_unique<std::mutex>();
    providers_[provider_id] = std::move(provider);
}

bool Gateway::has_provider(std::string_view provider_id) const {
    return providers_.find(provider_id) != providers_.end();
}

std::shared_ptr<Provider> Gateway::provider(std::string_view provider_id) const {
    auto it = providers_.find(provider_id);
    return it == providers_.end() ? nullptr : it->second;
}

int Gateway::last_transport_attempts() { return t_last_attempts; }

ChatExchange Gateway::complete(const ModelRef& model, const ChatRequest& request) {
    auto it = providers_.find(model.provider_id);
    if (it == providers_.end()) throw ProviderError("no provider registered for '" + model.provider_id + "'");
    auto& provider = *it->second;
    std::mutex* serial = nullptr;
    if (auto lock_it = serial_locks_.find(model.provider_id); lock_it != serial_locks_.end()) serial = lock_it->second.get();

    auto backoff = policy_.initial_backoff;
    for (int attempt = 1;; ++attempt) {
        t_last_attempts = attempt;
        try {
            if (serial) {
                std::lock_guard lock(*serial);
                return provider.complete(model, request);
            }
            return provider.complete(model, request);
        } catch (const TransportError& e) {
            if (attempt > policy_.max_retries) throw TransportError(e.what(), attempt);
            std::this_thread::sleep_for(backoff);
            backoff = std::chrono::milliseconds(static_cast<long long>(static_cast<double>(backoff.count()) * policy_.multiplier));
        }
    }
}

ChatExchange Gateway::complete(const ModelRef& model, const std::string& system_prompt, const std::string& user_prompt,
                               const DecodingParams& decoding) {
    ChatRequest request;
    request.system_prompt = system_prompt;
    request.user_prompt = user_prompt;
    request.decoding = decoding;
    return complete(model, request);
}

ChatExchange Gateway::run_template(const ModelRef& model, const std::string& template_id, const json& bindings) {
    const auto& tpl = prompt_template(template_id);
    ChatRequest request;
    request.system_prompt = tpl.system_prompt;
    request.user_prompt = render_prompt(template_id, bindings);
    request.decoding = tpl.decoding;
    request.template_id = template_id;
    request.bindings = bindings;
    return complete(model, request);
}

}  // namespace genius::llm
