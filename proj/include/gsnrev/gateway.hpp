// Provider-agnostic dispatch of prompt bundles to chat-completion backends,
// plus the multi-run experiment orchestrator.
//
// Credentials come from GSNREV_<PROVIDER>_API_KEY; an optional
// GSNREV_<PROVIDER>_BASE_URL overrides the endpoint. No sampling parameters
// are sent unless the model spec carries overrides, matching the providers'
// default settings.

#ifndef GSNREV_GATEWAY_HPP
#define GSNREV_GATEWAY_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsnrev/prompt.hpp"

namespace gsnrev {

struct ModelSpec {
    std::string provider_id;
    std::string model_id;
    std::map<std::string, std::string> params;  // empty = provider defaults

    std::string display() const { return provider_id + ":" + model_id; }
};

struct CompletionResult {
    std::string text;
    std::int64_t latency_ms = 0;
    bool truncated = false;
};

enum class CompletionErrorKind { Auth, RateLimited, Transport, ProviderRefusal };

class CompletionError : public std::runtime_error {
public:
    CompletionError(CompletionErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    CompletionErrorKind kind() const { return kind_; }
    // Auth failures and refusals are deterministic; retrying them only burns
    // quota.
    bool transient() const {
        return kind_ == CompletionErrorKind::Transport || kind_ == CompletionErrorKind::RateLimited;
    }

private:
    CompletionErrorKind kind_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string id() const = 0;
    // Throws CompletionError.
    virtual CompletionResult complete(const ModelSpec& model, const PromptBundle& bundle) = 0;
    // Providers that cannot take concurrent calls return false and are
    // serialized by the gateway.
    virtual bool concurrent_safe() const { return true; }
};

// ── Mock provider ───────────────────────────────────────────────────────────
// Deterministic offline provider. Responses, in resolution order:
//   1. a scripted queue of failures/responses (consumed first),
//   2. a canned response keyed by (model_id, prompt fingerprint),
//   3. a synthesized review whose score depends on the model spec:
//        - model_id "fixed-N" (N in 1..5): constant score N,
//        - params["scores"] = "System A=2;System B=4": per-system score,
//          keyed on the system name found in the user prompt,
//        - otherwise: score derived from a stable hash of the user prompt.
class MockProvider : public Provider {
public:
    std::string id() const override { return "mock"; }
    CompletionResult complete(const ModelSpec& model, const PromptBundle& bundle) override;

    void push_scripted_failure(CompletionErrorKind kind, std::string message = "scripted failure");
    void push_scripted_response(std::string text);
    void set_canned_response(const std::string& model_id, const std::string& fingerprint,
                             std::string text);

    int calls() const;

    static std::string synthesize_review(const ModelSpec& model, const PromptBundle& bundle);

private:
    struct ScriptEntry {
        std::optional<CompletionErrorKind> failure;
        std::string payload;
    };
    mutable std::mutex mutex_;  // complete() runs concurrently under the gateway
    std::vector<ScriptEntry> script_;
    std::size_t script_pos_ = 0;
    std::map<std::pair<std::string, std::string>, std::string> canned_;
    int calls_ = 0;
};

// ── HTTP provider ───────────────────────────────────────────────────────────
// Speaks the common chat-completions JSON protocol with (system, user)
// message roles against <base_url>/v1/chat/completions.
class HttpChatProvider : public Provider {
public:
    // Reads GSNREV_<ID>_API_KEY (required) and GSNREV_<ID>_BASE_URL
    // (fallback: explicit base_url argument). Throws ConfigError when the
    // key or endpoint is missing.
    explicit HttpChatProvider(std::string provider_id, std::string base_url = {},
                              std::chrono::seconds timeout = std::chrono::seconds(120));

    std::string id() const override { return provider_id_; }
    CompletionResult complete(const ModelSpec& model, const PromptBundle& bundle) override;

private:
    std::string provider_id_;
    std::string base_url_;
    std::string api_key_;
    std::chrono::seconds timeout_;
};

class ProviderRegistry {
public:
    void add(std::shared_ptr<Provider> provider);
    Provider& resolve(const std::string& provider_id) const;  // throws ConfigError
    bool has(const std::string& provider_id) const;

private:
    std::map<std::string, std::shared_ptr<Provider>> providers_;
};

// ── Retry policy ────────────────────────────────────────────────────────────

struct RetryPolicy {
    int max_attempts = 4;
    std::chrono::milliseconds initial_backoff{500};
    double multiplier = 2.0;
    std::chrono::milliseconds max_backoff{8000};
};

using LogSink = std::function<void(const std::string&)>;

struct CompletionOutcome {
    CompletionResult result;
    int attempts = 1;
};

// Retries transient failures (transport, rate limit) with exponential
// backoff; never retries auth failures or refusals.
CompletionOutcome complete_with_retry(Provider& provider, const ModelSpec& model,
                                      const PromptBundle& bundle, const RetryPolicy& policy = {},
                                      const LogSink& log = {});

// ── Experiment orchestration ────────────────────────────────────────────────

struct ExperimentRecord {
    std::string record_id;
    std::string case_name;
    ModelSpec model;
    Strategy strategy = Strategy::ZeroShot;
    Criterion criterion = Criterion::ArgumentComprehension;
    int run_index = 1;  // in [1, runs]
    std::string prompt_fingerprint;
    std::string raw_response;  // empty when errored
    std::string timestamp;     // ISO-8601 UTC
    std::optional<std::string> error;
};

struct CaseInput {
    std::string name;       // e.g. "Baidu Apollo"
    std::string case_kind;  // "safety case" / "security case"
    std::string prose;      // structured prose fed to the prompt compiler
};

struct ExperimentGrid {
    std::vector<CaseInput> cases;
    std::vector<Criterion> criteria;
    std::vector<Strategy> strategies;
    std::vector<ModelSpec> models;
    int runs = 5;
    std::optional<OneShotExample> example;  // required iff OneShotCoT is in strategies
    bool strict_output = false;
};

struct RunOptions {
    int concurrency = 4;
    RetryPolicy retry;
    LogSink log;
    // Test seam: timestamps come from here.
    std::function<std::string()> clock;
};

using RecordSink = std::function<void(const ExperimentRecord&)>;

// Emits exactly |cases| x |criteria| x |strategies| x |models| x runs
// records in deterministic nested-loop order (case, criterion, strategy,
// model, run) regardless of internal concurrency. Failed completions become
// records with an error marker, never holes. Configuration errors throw
// ConfigError before any dispatch.
void run_experiment(const ExperimentGrid& grid, const ProviderRegistry& registry,
                    const RunOptions& options, const RecordSink& sink);

std::string record_to_jsonl(const ExperimentRecord& record);  // single line, no '\n'
ExperimentRecord record_from_jsonl(const std::string& line);  // throws std::runtime_error

std::string current_utc_timestamp();

}  // namespace gsnrev

#endif  // GSNREV_GATEWAY_HPP
