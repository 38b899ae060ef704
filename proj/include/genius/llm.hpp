#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace genius::llm {

enum class Role { worker, referee, interface, scorer, error_keyworder };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view text);

struct ModelRef {
    std::string provider_id;
    std::string model_id;
    Role role = Role::worker;

    bool operator==(const ModelRef&) const = default;
    nlohmann::json to_json() const;
};

/// Ordered by assumed capability, weakest first.
struct ModelHierarchy {
    std::vector<ModelRef> models;
    int retries_per_model = 3;

    /// Throws std::invalid_argument when empty, when the budget is not positive or an id is blank.
    void validate() const;
    std::size_t size() const { return models.size(); }
};

/// "provider/model" -> ModelRef; a bare "model" uses `default_provider`.
ModelRef parse_model_spec(std::string_view spec, std::string_view default_provider, Role role);

struct DecodingParams {
    double temperature = 0.0;
    int max_tokens = 4096;
};

struct TokenUsage {
    int prompt_tokens = 0;
    int completion_tokens = 0;
};

struct ChatRequest {
    std::string system_prompt;
    std::string user_prompt;
    DecodingParams decoding;
    // Set when the prompt came from a shipped template; the scripted provider keys on these.
    std::optional<std::string> template_id;
    nlohmann::json bindings = nlohmann::json::object();
};

struct ChatExchange {
    std::string system_prompt;
    std::string user_prompt;
    std::string response_text;
    std::optional<TokenUsage> token_usage;
    std::chrono::milliseconds latency{0};
};

class GatewayError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual bool retriable() const { return false; }
};

class AuthError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class ProviderError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class TransportError : public GatewayError {
public:
    explicit TransportError(const std::string& message, int attempts = 1) : GatewayError(message), attempts_(attempts) {}
    bool retriable() const override { return true; }
    int attempts() const { return attempts_; }

private:
    int attempts_;
};

class RateLimitError : public TransportError {
public:
    using TransportError::TransportError;
};

class TimeoutError : public TransportError {
public:
    using TransportError::TransportError;
};

class Provider {
public:
    virtual ~Provider() = default;
    virtual ChatExchange complete(const ModelRef& model, const ChatRequest& request) = 0;
    /// Providers that cannot take concurrent calls return true; the gateway then serializes them.
    virtual bool serialize_calls() const { return false; }
    /// Live providers need a credential; scripted ones do not.
    virtual bool needs_credential() const { return true; }
};

std::string stable_hash(const nlohmann::json& bindings);
std::string prompt_hash(std::string_view system_prompt, std::string_view user_prompt);

/// Replays recorded responses. Lookup order for a request: exact (template, bindings hash);
/// exact prompt hash; first rich entry whose filters match; per-template default; catalog default.
class ScriptedProvider : public Provider {
public:
    struct Entry {
        std::optional<std::string> template_id;
        std::optional<std::string> bindings_hash;
        std::optional<std::string> prompt_hash;
        std::optional<std::string> model_id;
        // binding name -> substring that must occur in that binding; a leading '=' asks for equality
        std::map<std::string, std::string> when;
        std::string response;
        // When set the response is the named binding, optionally wrapped in a fenced block.
        std::optional<std::string> echo_binding;
        bool fence = false;
    };

    ScriptedProvider() = default;
    explicit ScriptedProvider(std::vector<Entry> entries, std::optional<std::string> fallback = std::nullopt);

    /// Accepts either {"key": "response", ...} or {"entries": [...], "parameter_values": {...}, "default": ...}.
    /// parameter_values maps a KG node name to the value parameter_evaluate should return for it.
    static ScriptedProvider from_json(const nlohmann::json& catalog);
    static ScriptedProvider from_file(const std::string& path);

    void add(Entry entry);
    /// Appends entries of `other` after this catalog's entries (lower priority).
    void merge(const ScriptedProvider& other);
    void set_default(std::optional<std::string> fallback) { fallback_ = std::move(fallback); }

    ChatExchange complete(const ModelRef& model, const ChatRequest& request) override;
    bool needs_credential() const override { return false; }

    std::size_t calls() const;

private:
    std::optional<std::string> lookup(const ModelRef& model, const ChatRequest& request) const;

    std::vector<Entry> entries_;
    std::optional<std::string> fallback_;
    std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
    std::size_t calls_ = 0;
};

/// Chat-completions over HTTP(S) in the common {"model", "messages"} shape.
class HttpChatProvider : public Provider {
public:
    struct Config {
        std::string base_url;  // scheme://host[:port]
        std::string path = "/v1/chat/completions";
        std::string api_key;
        std::chrono::milliseconds timeout{60000};
    };

    explicit HttpChatProvider(Config config) : config_(std::move(config)) {}
    ChatExchange complete(const ModelRef& model, const ChatRequest& request) override;

private:
    Config config_;
};

/// Environment variable holding a provider's credential: GENIUS_API_KEY_<PROVIDER_ID>.
std::string credential_variable(std::string_view provider_id);
std::optional<std::string> credential_for(std::string_view provider_id);

struct TransportRetryPolicy {
    int max_retries = 3;
    std::chrono::milliseconds initial_backoff{200};
    double multiplier = 2.0;
};

class Gateway {
public:
    explicit Gateway(TransportRetryPolicy policy = {}) : policy_(policy) {}

    void register_provider(const std::string& provider_id, std::shared_ptr<Provider> provider);
    bool has_provider(std::string_view provider_id) const;
    std::shared_ptr<Provider> provider(std::string_view provider_id) const;

    /// Retries retriable transport failures up to policy.max_retries times with exponential backoff.
    ChatExchange complete(const ModelRef& model, const ChatRequest& request);
    ChatExchange complete(const ModelRef& model, const std::string& system_prompt, const std::string& user_prompt,
                          const DecodingParams& decoding);

    /// Renders a shipped template and completes it with the template's decoding defaults.
    ChatExchange run_template(const ModelRef& model, const std::string& template_id, const nlohmann::json& bindings);

    /// Transport attempts made by the last complete() on this thread.
    static int last_transport_attempts();

private:
    TransportRetryPolicy policy_;
    std::map<std::string, std::shared_ptr<Provider>, std::less<>> providers_;
    std::map<std::string, std::unique_ptr<std::mutex>, std::less<>> serial_locks_;
};

}  // namespace genius::llm
