#include <httplib.h>

#include "gsnrev/gateway.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <cctype>
#include <ctime>
#include <mutex>
#include <tuple>
#include <thread>

#include <json.hpp>

#include "gsnrev/digest.hpp"

namespace gsnrev {

namespace {

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string env_var_name(const std::string& provider_id, const char* suffix) {
    std::string name = "GSNREV_";
    for (char c : provider_id) {
        name.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    name += suffix;
    return name;
}

std::optional<std::string> read_env(const std::string& name) {
    const char* value = std::getenv(name.c_str());
    if (!value || !*value) return std::nullopt;
    return std::string(value);
}

// "review the safety case of the Baidu Apollo. Once finished ..." -> the
// system name, so the mock can key per-case scores off the prompt alone.
std::optional<std::string> system_name_from_user_prompt(const std::string& user_prompt) {
    const std::string_view lead = " of the ";
    const std::string_view tail = ". Once finished";
    const std::size_t from = user_prompt.find(lead);
    if (from == std::string::npos) return std::nullopt;
    const std::size_t to = user_prompt.find(tail, from);
    if (to == std::string::npos) return std::nullopt;
    return user_prompt.substr(from + lead.size(), to - from - lead.size());
}

}  // namespace

// ── MockProvider ────────────────────────────────────────────────────────────

CompletionResult MockProvider::complete(const ModelSpec& model, const PromptBundle& bundle) {
    std::lock_guard<std::mutex> lock(mutex_);
    ++calls_;
    if (script_pos_ < script_.size()) {
        ScriptEntry entry = script_[script_pos_++];
        if (entry.failure) throw CompletionError(*entry.failure, entry.payload);
        return CompletionResult{std::move(entry.payload), 0, false};
    }
    if (auto it = canned_.find({model.model_id, bundle.fingerprint}); it != canned_.end()) {
        return CompletionResult{it->second, 0, false};
    }
    return CompletionResult{synthesize_review(model, bundle), 0, false};
}

void MockProvider::push_scripted_failure(CompletionErrorKind kind, std::string message) {
    std::lock_guard<std::mutex> lock(mutex_);
    script_.push_back({kind, std::move(message)});
}

void MockProvider::push_scripted_response(std::string text) {
    std::lock_guard<std::mutex> lock(mutex_);
    script_.push_back({std::nullopt, std::move(text)});
}

void MockProvider::set_canned_response(const std::string& model_id, const std::string& fingerprint,
                                       std::string text) {
    std::lock_guard<std::mutex> lock(mutex_);
    canned_[{model_id, fingerprint}] = std::move(text);
}

int MockProvider::calls() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return calls_;
}

std::string MockProvider::synthesize_review(const ModelSpec& model, const PromptBundle& bundle) {
    int score = 0;
    if (model.model_id.starts_with("fixed-") && model.model_id.size() == 7 &&
        model.model_id[6] >= '1' && model.model_id[6] <= '5') {
        score = model.model_id[6] - '0';
    }
    if (score == 0) {
        if (auto it = model.params.find("scores"); it != model.params.end()) {
            if (auto system = system_name_from_user_prompt(bundle.user_prompt)) {
                // "System A=2;System B=4"
                const std::string& spec = it->second;
                std::size_t pos = 0;
                while (pos < spec.size()) {
                    std::size_t end = spec.find(';', pos);
                    if (end == std::string::npos) end = spec.size();
                    const std::string_view pair = std::string_view(spec).substr(pos, end - pos);
                    const std::size_t eq = pair.find('=');
                    if (eq != std::string_view::npos && pair.substr(0, eq) == *system &&
                        eq + 1 < pair.size()) {
                        const char digit = pair[eq + 1];
                        if (digit >= '1' && digit <= '5') score = digit - '0';
                    }
                    pos = end + 1;
                }
            }
        }
    }
    if (score == 0) {
        score = 1 + static_cast<int>(fnv1a(bundle.user_prompt) % 5);
    }
    std::string review;
    review += "Step 1: Identifying issues in the assurance case\n\n";
    review += "Issue(G1, The top-level claim is stated without quantified acceptance criteria.)\n";
    review +=
        "Description(I1, G1, The claim does not state a measurable target, so the reviewer cannot "
        "tell when the argument is complete.)\n";
    review +=
        "Suggest(I1, G1, State the acceptable risk level and cite the applicable standard in the "
        "top-level claim.)\n\n";
    review += "Score: " + std::to_string(score) + "\n";
    return review;
}

// ── HttpChatProvider ────────────────────────────────────────────────────────

HttpChatProvider::HttpChatProvider(std::string provider_id, std::string base_url,
                                   std::chrono::seconds timeout)
    : provider_id_(std::move(provider_id)), base_url_(std::move(base_url)), timeout_(timeout) {
    const std::string key_var = env_var_name(provider_id_, "_API_KEY");
    auto key = read_env(key_var);
    if (!key) {
        throw ConfigError("missing credential: set " + key_var);
    }
    api_key_ = *key;
    if (auto url = read_env(env_var_name(provider_id_, "_BASE_URL"))) {
        base_url_ = *url;
    }
    if (base_url_.empty()) {
        throw ConfigError("no endpoint for provider '" + provider_id_ + "': set " +
                          env_var_name(provider_id_, "_BASE_URL"));
    }
}

CompletionResult HttpChatProvider::complete(const ModelSpec& model, const PromptBundle& bundle) {
    // Split an optional path prefix off the base URL; httplib clients take
    // scheme://host[:port] only.
    std::string origin = base_url_;
    std::string prefix;
    const std::size_t scheme = origin.find("://");
    if (scheme != std::string::npos) {
        const std::size_t slash = origin.find('/', scheme + 3);
        if (slash != std::string::npos) {
            prefix = origin.substr(slash);
            origin = origin.substr(0, slash);
            if (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
        }
    }

    nlohmann::json body{
        {"model", model.model_id},
        {"messages",
         {{{"role", "system"}, {"content", bundle.system_prompt}},
          {{"role", "user"}, {"content", bundle.user_prompt}}}},
    };
    for (const auto& [key, value] : model.params) {
        char* end = nullptr;
        const double numeric = std::strtod(value.c_str(), &end);
        if (end && *end == '\0' && end != value.c_str()) {
            body[key] = numeric;
        } else {
            body[key] = value;
        }
    }

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_.count(), 0);
    client.set_read_timeout(timeout_.count(), 0);
    client.set_write_timeout(timeout_.count(), 0);
    client.set_bearer_token_auth(api_key_);

    const auto started = std::chrono::steady_clock::now();
    httplib::Result response = client.Post(prefix + "/v1/chat/completions", body.dump(),
                                           "application/json");
    const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();

    if (!response) {
        throw CompletionError(CompletionErrorKind::Transport,
                              "transport failure: " + httplib::to_string(response.error()));
    }
    if (response->status == 401 || response->status == 403) {
        throw CompletionError(CompletionErrorKind::Auth,
                              "authentication rejected (HTTP " +
                                  std::to_string(response->status) + ")");
    }
    if (response->status == 429) {
        throw CompletionError(CompletionErrorKind::RateLimited, "rate limited (HTTP 429)");
    }
    if (response->status != 200) {
        throw CompletionError(CompletionErrorKind::Transport,
                              "unexpected HTTP status " + std::to_string(response->status));
    }

    nlohmann::json doc = nlohmann::json::parse(response->body, nullptr, false);
    if (doc.is_discarded()) {
        throw CompletionError(CompletionErrorKind::Transport, "malformed completion body");
    }
    if (!doc.contains("choices") || !doc["choices"].is_array() || doc["choices"].empty()) {
        throw CompletionError(CompletionErrorKind::ProviderRefusal,
                              "provider returned no choices");
    }
    const nlohmann::json& choice = doc["choices"][0];
    const std::string text = choice.value("message", nlohmann::json::object()).value("content", "");
    const bool truncated = choice.value("finish_reason", "") == "length";
    if (text.empty() && !truncated) {
        throw CompletionError(CompletionErrorKind::ProviderRefusal,
                              "provider returned an empty response");
    }
    return CompletionResult{text, latency, truncated};
}

// ── Registry ────────────────────────────────────────────────────────────────

void ProviderRegistry::add(std::shared_ptr<Provider> provider) {
    providers_[provider->id()] = std::move(provider);
}

Provider& ProviderRegistry::resolve(const std::string& provider_id) const {
    auto it = providers_.find(provider_id);
    if (it == providers_.end()) {
        throw ConfigError("provider '" + provider_id + "' is not registered");
    }
    return *it->second;
}

bool ProviderRegistry::has(const std::string& provider_id) const {
    return providers_.count(provider_id) > 0;
}

// ── Retry ───────────────────────────────────────────────────────────────────

CompletionOutcome complete_with_retry(Provider& provider, const ModelSpec& model,
                                      const PromptBundle& bundle, const RetryPolicy& policy,
                                      const LogSink& log) {
    std::chrono::milliseconds backoff = policy.initial_backoff;
    for (int attempt = 1;; ++attempt) {
        try {
            CompletionResult result = provider.complete(model, bundle);
            if (log) {
                log("completed " + model.display() + " after " + std::to_string(attempt) +
                    " attempt(s)");
            }
            return CompletionOutcome{std::move(result), attempt};
        } catch (const CompletionError& err) {
            if (!err.transient() || attempt >= policy.max_attempts) {
                if (log) {
                    log("giving up on " + model.display() + " after " + std::to_string(attempt) +
                        " attempt(s): " + err.what());
                }
                throw;
            }
            if (log) {
                log("attempt " + std::to_string(attempt) + " for " + model.display() +
                    " failed (" + err.what() + "), retrying");
            }
            if (backoff.count() > 0) std::this_thread::sleep_for(backoff);
            backoff = std::min(
                std::chrono::milliseconds(static_cast<std::int64_t>(
                    static_cast<double>(backoff.count()) * policy.multiplier)),
                policy.max_backoff);
        }
    }
}

// ── Experiment orchestration ────────────────────────────────────────────────

namespace {

struct Task {
    std::size_t index = 0;
    const CaseInput* case_input = nullptr;
    Criterion criterion = Criterion::ArgumentComprehension;
    Strategy strategy = Strategy::ZeroShot;
    ModelSpec model;
    int run_index = 1;
    const PromptBundle* bundle = nullptr;
};

std::string make_record_id(const Task& task) {
    const std::string key = task.case_input->name + "|" + task.model.provider_id + "|" +
                            task.model.model_id + "|" +
                            std::string(strategy_token(task.strategy)) + "|" +
                            std::string(criterion_token(task.criterion)) + "|" +
                            std::to_string(task.run_index);
    return sha256_hex(key).substr(0, 16);
}

}  // namespace

void run_experiment(const ExperimentGrid& grid, const ProviderRegistry& registry,
                    const RunOptions& options, const RecordSink& sink) {
    if (grid.runs < 1) throw ConfigError("runs must be >= 1");
    if (options.concurrency < 1) throw ConfigError("concurrency cap must be >= 1");
    const bool one_shot = std::any_of(grid.strategies.begin(), grid.strategies.end(),
                                      [](Strategy s) { return s == Strategy::OneShotCoT; });
    if (one_shot && !grid.example) {
        throw ConfigError("the one-shot strategy requires a review example");
    }
    if (grid.example && (grid.example->case_prose.empty() || grid.example->review.empty())) {
        throw ConfigError("one-shot example fields must be non-empty");
    }
    for (const ModelSpec& model : grid.models) {
        registry.resolve(model.provider_id);  // throws before any dispatch
    }
    // Duplicate model specs would break the (case, model, strategy,
    // criterion, run) uniqueness of records.
    for (std::size_t i = 0; i < grid.models.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.models.size(); ++j) {
            const ModelSpec& a = grid.models[i];
            const ModelSpec& b = grid.models[j];
            if (a.provider_id == b.provider_id && a.model_id == b.model_id &&
                a.params == b.params) {
                throw ConfigError("model listed twice: " + a.display());
            }
        }
    }

    // Bundles are shared across models and runs; compile each (case,
    // criterion, strategy) cell once, before dispatch.
    std::map<std::tuple<std::size_t, Criterion, Strategy>, PromptBundle> bundles;
    for (std::size_t c = 0; c < grid.cases.size(); ++c) {
        for (Criterion criterion : grid.criteria) {
            for (Strategy strategy : grid.strategies) {
                std::optional<OneShotExample> example;
                if (strategy == Strategy::OneShotCoT) example = grid.example;
                CompileOptions compile_options{grid.strict_output};
                bundles.emplace(std::make_tuple(c, criterion, strategy),
                                compile_from_prose(grid.cases[c].prose, grid.cases[c].case_kind,
                                                   grid.cases[c].name, criterion, strategy,
                                                   example, compile_options));
            }
        }
    }

    std::vector<Task> tasks;
    for (std::size_t c = 0; c < grid.cases.size(); ++c) {
        for (Criterion criterion : grid.criteria) {
            for (Strategy strategy : grid.strategies) {
                for (const ModelSpec& model : grid.models) {
                    for (int run = 1; run <= grid.runs; ++run) {
                        Task task;
                        task.index = tasks.size();
                        task.case_input = &grid.cases[c];
                        task.criterion = criterion;
                        task.strategy = strategy;
                        task.model = model;
                        task.run_index = run;
                        task.bundle = &bundles.at(std::make_tuple(c, criterion, strategy));
                        tasks.push_back(std::move(task));
                    }
                }
            }
        }
    }

    const auto clock = options.clock ? options.clock : current_utc_timestamp;

    // Providers that declared themselves serial get one mutex each.
    std::map<std::string, std::unique_ptr<std::mutex>> serial_locks;
    for (const ModelSpec& model : grid.models) {
        Provider& provider = registry.resolve(model.provider_id);
        if (!provider.concurrent_safe() && !serial_locks.count(model.provider_id)) {
            serial_locks.emplace(model.provider_id, std::make_unique<std::mutex>());
        }
    }

    auto execute = [&](const Task& task) {
        ExperimentRecord record;
        record.record_id = make_record_id(task);
        record.case_name = task.case_input->name;
        record.model = task.model;
        record.strategy = task.strategy;
        record.criterion = task.criterion;
        record.run_index = task.run_index;
        record.prompt_fingerprint = task.bundle->fingerprint;
        record.timestamp = clock();
        try {
            Provider& provider = registry.resolve(task.model.provider_id);
            std::unique_lock<std::mutex> serial;
            if (auto it = serial_locks.find(task.model.provider_id); it != serial_locks.end()) {
                serial = std::unique_lock<std::mutex>(*it->second);
            }
            CompletionOutcome outcome =
                complete_with_retry(provider, task.model, *task.bundle, options.retry, options.log);
            record.raw_response = std::move(outcome.result.text);
        } catch (const CompletionError& err) {
            record.error = err.what();
        } catch (const std::exception& err) {
            record.error = std::string("internal error: ") + err.what();
        }
        return record;
    };

    // Dispatch is concurrent up to the cap; emission re-sequences into task
    // order so the sink always sees the deterministic nested-loop stream.
    std::mutex results_mutex;
    std::condition_variable results_ready;
    std::vector<std::optional<ExperimentRecord>> results(tasks.size());
    std::atomic<std::size_t> next_task{0};

    const std::size_t worker_count =
        std::min<std::size_t>(static_cast<std::size_t>(options.concurrency), tasks.size());
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back([&]() {
            for (;;) {
                const std::size_t index = next_task.fetch_add(1);
                if (index >= tasks.size()) return;
                ExperimentRecord record = execute(tasks[index]);
                {
                    std::lock_guard<std::mutex> lock(results_mutex);
                    results[index] = std::move(record);
                }
                results_ready.notify_all();
            }
        });
    }

    for (std::size_t index = 0; index < tasks.size(); ++index) {
        std::unique_lock<std::mutex> lock(results_mutex);
        results_ready.wait(lock, [&]() { return results[index].has_value(); });
        ExperimentRecord record = std::move(*results[index]);
        results[index].reset();
        lock.unlock();
        sink(record);
    }
    for (std::thread& worker : workers) worker.join();
}

// ── Record JSON Lines ───────────────────────────────────────────────────────

std::string record_to_jsonl(const ExperimentRecord& record) {
    nlohmann::json doc{
        {"record_id", record.record_id},
        {"case_name", record.case_name},
        {"provider_id", record.model.provider_id},
        {"model_id", record.model.model_id},
        {"params", record.model.params},
        {"strategy", std::string(strategy_token(record.strategy))},
        {"criterion", std::string(criterion_token(record.criterion))},
        {"run_index", record.run_index},
        {"prompt_fingerprint", record.prompt_fingerprint},
        {"raw_response", record.raw_response},
        {"timestamp", record.timestamp},
    };
    if (record.error) doc["error"] = *record.error;
    return doc.dump();
}

ExperimentRecord record_from_jsonl(const std::string& line) {
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw std::runtime_error("malformed record line: " + line);
    }
    ExperimentRecord record;
    try {
        record.record_id = doc.at("record_id").get<std::string>();
        record.case_name = doc.at("case_name").get<std::string>();
        record.model.provider_id = doc.at("provider_id").get<std::string>();
        record.model.model_id = doc.at("model_id").get<std::string>();
        record.model.params = doc.at("params").get<std::map<std::string, std::string>>();
        const auto strategy = strategy_from_token(doc.at("strategy").get<std::string>());
        const auto criterion = criterion_from_token(doc.at("criterion").get<std::string>());
        if (!strategy || !criterion) {
            throw std::runtime_error("unknown strategy/criterion token");
        }
        record.strategy = *strategy;
        record.criterion = *criterion;
        record.run_index = doc.at("run_index").get<int>();
        record.prompt_fingerprint = doc.at("prompt_fingerprint").get<std::string>();
        record.raw_response = doc.at("raw_response").get<std::string>();
        record.timestamp = doc.at("timestamp").get<std::string>();
        if (doc.contains("error")) record.error = doc["error"].get<std::string>();
    } catch (const nlohmann::json::exception& err) {
        throw std::runtime_error(std::string("malformed record line: ") + err.what());
    }
    return record;
}

std::string current_utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

}  // namespace gsnrev
