// gsnrev: batch command-line surface for the GSN review pipeline.
//
//   validate  parse a structured-prose case and run the static analyzer
//   compile   build the (system, user) review prompt bundle for a case
//   review    run a review experiment grid against providers, store records
//   report    aggregate stored records (and assessor ratings) into tables
//
// Exit codes: 0 success, 1 domain findings/failures, 2 environment or I/O
// failure, 64 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "gsnrev/digest.hpp"
#include "gsnrev/gateway.hpp"
#include "gsnrev/metrics.hpp"
#include "gsnrev/prompt.hpp"
#include "gsnrev/prose.hpp"
#include "gsnrev/review.hpp"
#include "gsnrev/store.hpp"
#include "gsnrev/wellformed.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitEnvironment = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EnvironmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw EnvironmentError("cannot read file: " + path.string());
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

gsnrev::Criterion parse_criterion_flag(const std::string& token) {
    if (auto criterion = gsnrev::criterion_from_token(token)) return *criterion;
    throw UsageError("unknown criterion '" + token +
                     "' (expected arg-comp | well-formed | expr-suff | arg-crit)");
}

gsnrev::Strategy parse_strategy_flag(const std::string& token) {
    if (auto strategy = gsnrev::strategy_from_token(token)) return *strategy;
    throw UsageError("unknown strategy '" + token + "' (expected zs | zs-cot | os-cot)");
}

gsnrev::OneShotExample load_example(const fs::path& path) {
    const json doc = json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("case_prose") ||
        !doc.contains("review")) {
        throw EnvironmentError("example file must be JSON with case_prose and review fields: " +
                               path.string());
    }
    gsnrev::OneShotExample example{doc["case_prose"].get<std::string>(),
                                   doc["review"].get<std::string>()};
    if (example.case_prose.empty() || example.review.empty()) {
        throw EnvironmentError("example file fields must be non-empty: " + path.string());
    }
    return example;
}

json diagnostics_to_json(const std::vector<gsnrev::ParseDiagnostic>& diagnostics) {
    json out = json::array();
    for (const auto& d : diagnostics) {
        out.push_back({{"line", d.line_no},
                       {"severity", d.severity == gsnrev::Severity::Error ? "error" : "warning"},
                       {"message", d.message}});
    }
    return out;
}

// ── validate ────────────────────────────────────────────────────────────────

int cmd_validate(const std::string& prose_path, bool as_json) {
    const std::string text = read_file(prose_path);
    const auto [ac, diagnostics] =
        gsnrev::parse_prose(text, fs::path(prose_path).stem().string());
    const gsnrev::StructuralReport report = gsnrev::analyze(ac);

    bool failed = false;
    for (const auto& d : diagnostics) {
        if (d.severity == gsnrev::Severity::Error) failed = true;
    }
    for (const auto& issue : report.issues) {
        // The undeveloped decorator is sanctioned notation; everything else
        // counts as a finding.
        if (issue.kind != gsnrev::IssueKind::UndevelopedElement) failed = true;
    }

    if (as_json) {
        json doc{{"case_name", report.case_name},
                 {"diagnostics", diagnostics_to_json(diagnostics)},
                 {"report", json::parse(gsnrev::report_to_json(report))},
                 {"ok", !failed}};
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& d : diagnostics) {
            std::cout << "line " << d.line_no << " "
                      << (d.severity == gsnrev::Severity::Error ? "error" : "warning") << ": "
                      << d.message << "\n";
        }
        std::cout << gsnrev::report_to_text(report);
    }
    return failed ? kExitFindings : kExitOk;
}

// ── compile ─────────────────────────────────────────────────────────────────

int cmd_compile(const std::string& case_path, const std::string& criterion_token,
                const std::string& strategy_token, const std::string& example_path,
                const std::string& case_kind, std::string system_name, bool strict_output) {
    const gsnrev::Criterion criterion = parse_criterion_flag(criterion_token);
    const gsnrev::Strategy strategy = parse_strategy_flag(strategy_token);
    if (strategy == gsnrev::Strategy::OneShotCoT && example_path.empty()) {
        throw UsageError("--strategy os-cot requires --example");
    }
    if (strategy != gsnrev::Strategy::OneShotCoT && !example_path.empty()) {
        throw UsageError("--example is only valid with --strategy os-cot");
    }

    const std::string prose = read_file(case_path);
    if (system_name.empty()) system_name = fs::path(case_path).stem().string();

    std::optional<gsnrev::OneShotExample> example;
    if (!example_path.empty()) example = load_example(example_path);

    gsnrev::CompileOptions options;
    options.strict_output = strict_output;

    const gsnrev::PromptBundle bundle = gsnrev::compile_from_prose(
        prose, case_kind, system_name, criterion, strategy, example, options);
    std::cout << gsnrev::bundle_to_json(bundle) << "\n";
    return kExitOk;
}

// ── review ──────────────────────────────────────────────────────────────────

struct ReviewConfig {
    fs::path corpus;
    fs::path store;
    std::vector<gsnrev::ModelSpec> models;
    std::vector<std::string> criteria;    // tokens; empty = all four
    std::vector<std::string> strategies;  // tokens; empty = all three
    std::vector<std::string> cases;       // names; empty = all
    fs::path example;
    int runs = 5;
    int concurrency = 4;
    bool strict_output = false;
};

gsnrev::ModelSpec parse_model_flag(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= spec.size()) {
        throw UsageError("model spec must be provider:model, got '" + spec + "'");
    }
    return {spec.substr(0, colon), spec.substr(colon + 1), {}};
}

void merge_config_file(ReviewConfig& config, const fs::path& path) {
    const json doc = json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw EnvironmentError("config file is not a JSON object: " + path.string());
    }
    const fs::path base = path.parent_path();
    if (doc.contains("corpus")) config.corpus = base / doc["corpus"].get<std::string>();
    if (doc.contains("store")) config.store = base / doc["store"].get<std::string>();
    if (doc.contains("example")) config.example = base / doc["example"].get<std::string>();
    if (doc.contains("runs")) config.runs = doc["runs"].get<int>();
    if (doc.contains("concurrency")) config.concurrency = doc["concurrency"].get<int>();
    if (doc.contains("strict_output")) config.strict_output = doc["strict_output"].get<bool>();
    if (doc.contains("models")) {
        for (const json& item : doc["models"]) {
            gsnrev::ModelSpec model;
            model.provider_id = item.at("provider").get<std::string>();
            model.model_id = item.at("model").get<std::string>();
            if (item.contains("params")) {
                model.params = item["params"].get<std::map<std::string, std::string>>();
            }
            config.models.push_back(std::move(model));
        }
    }
    if (doc.contains("criteria")) {
        config.criteria = doc["criteria"].get<std::vector<std::string>>();
    }
    if (doc.contains("strategies")) {
        config.strategies = doc["strategies"].get<std::vector<std::string>>();
    }
    if (doc.contains("cases")) config.cases = doc["cases"].get<std::vector<std::string>>();
}

int cmd_review(const ReviewConfig& config, bool as_json) {
    if (config.corpus.empty()) throw UsageError("a corpus manifest is required (--corpus)");
    if (config.store.empty()) throw UsageError("a store directory is required (--store)");
    if (config.models.empty()) throw UsageError("at least one --model is required");

    gsnrev::ExperimentGrid grid;
    for (const std::string& token : config.criteria.empty()
             ? std::vector<std::string>{"arg-comp", "well-formed", "expr-suff", "arg-crit"}
             : config.criteria) {
        grid.criteria.push_back(parse_criterion_flag(token));
    }
    for (const std::string& token :
         config.strategies.empty() ? std::vector<std::string>{"zs", "zs-cot", "os-cot"}
                                   : config.strategies) {
        grid.strategies.push_back(parse_strategy_flag(token));
    }
    grid.models = config.models;
    grid.runs = config.runs;
    grid.strict_output = config.strict_output;

    const auto corpus = gsnrev::load_corpus(config.corpus);
    for (const auto& loaded : corpus) {
        if (!config.cases.empty() &&
            std::find(config.cases.begin(), config.cases.end(), loaded.entry.name) ==
                config.cases.end()) {
            continue;
        }
        for (const std::string& warning : loaded.warnings) {
            std::cerr << "warning: " << warning << "\n";
        }
        grid.cases.push_back({loaded.entry.name, loaded.entry.case_kind, loaded.prose});
    }
    if (grid.cases.empty()) throw EnvironmentError("no corpus cases matched the selection");

    if (!config.example.empty()) {
        grid.example = load_example(config.example);
    }

    // Providers resolve before dispatch; a missing credential or endpoint
    // aborts here with no records written.
    gsnrev::ProviderRegistry registry;
    registry.add(std::make_shared<gsnrev::MockProvider>());
    for (const gsnrev::ModelSpec& model : grid.models) {
        if (!registry.has(model.provider_id)) {
            registry.add(std::make_shared<gsnrev::HttpChatProvider>(model.provider_id));
        }
    }

    gsnrev::ExperimentStore store(config.store);
    gsnrev::RunOptions options;
    options.concurrency = config.concurrency;

    int errored = 0;
    int emitted = 0;
    json summary = json::array();
    gsnrev::run_experiment(grid, registry, options, [&](const gsnrev::ExperimentRecord& record) {
        store.append(record);
        ++emitted;
        if (record.error) ++errored;
        const auto score = gsnrev::extract_score(record.raw_response);
        if (as_json) {
            json row{{"record_id", record.record_id},
                     {"case", record.case_name},
                     {"criterion", std::string(gsnrev::criterion_token(record.criterion))},
                     {"strategy", std::string(gsnrev::strategy_token(record.strategy))},
                     {"model", record.model.display()},
                     {"run", record.run_index}};
            row["score"] = score ? json(*score) : json(nullptr);
            if (record.error) row["error"] = *record.error;
            summary.push_back(std::move(row));
        } else {
            std::cout << record.record_id << " " << record.case_name << " | "
                      << gsnrev::criterion_token(record.criterion) << " | "
                      << gsnrev::strategy_token(record.strategy) << " | "
                      << record.model.display() << " | run " << record.run_index << " -> ";
            if (record.error) {
                std::cout << "error: " << *record.error << "\n";
            } else if (score) {
                std::cout << "score=" << *score << "\n";
            } else {
                std::cout << "score=absent\n";
            }
        }
    });
    if (as_json) {
        std::cout << json{{"records", summary}, {"emitted", emitted}, {"errored", errored}}.dump(2)
                  << "\n";
    } else {
        std::cout << emitted << " record(s) appended to " << config.store.string() << ", "
                  << errored << " errored\n";
    }
    return errored > 0 ? kExitFindings : kExitOk;
}

// ── report ──────────────────────────────────────────────────────────────────

struct ScoredRecord {
    gsnrev::ExperimentRecord record;
    std::optional<int> score;
};

int cmd_report(const std::string& store_path, const std::string& ratings_path,
               const std::string& format_token, bool as_json) {
    gsnrev::TableFormat format = gsnrev::TableFormat::Csv;
    if (format_token == "markdown" || format_token == "md") {
        format = gsnrev::TableFormat::Markdown;
    } else if (format_token != "csv") {
        throw UsageError("unknown format '" + format_token + "' (expected csv | markdown)");
    }

    if (!fs::exists(store_path)) {
        std::cerr << "store is empty: " << store_path << "\n";
        return kExitFindings;
    }
    gsnrev::ExperimentStore store(store_path);
    const auto records = store.load();
    if (records.empty()) {
        std::cerr << "store is empty: " << store_path << "\n";
        return kExitFindings;
    }

    std::vector<ScoredRecord> scored;
    scored.reserve(records.size());
    for (const auto& record : records) {
        ScoredRecord s{record, std::nullopt};
        if (!record.error) s.score = gsnrev::extract_score(record.raw_response);
        scored.push_back(std::move(s));
    }

    // Mean LLM-assigned score per (llm, strategy, criterion).
    std::vector<gsnrev::Sample> score_samples;
    for (const ScoredRecord& s : scored) {
        if (!s.score) continue;
        score_samples.push_back({s.record.model.display(),
                                 std::string(gsnrev::strategy_token(s.record.strategy)),
                                 std::string(gsnrev::criterion_token(s.record.criterion)), "score",
                                 *s.score});
    }
    const gsnrev::AggregateTable score_table = gsnrev::aggregate_mean(score_samples);

    std::optional<gsnrev::AggregateTable> metric_table;
    std::vector<gsnrev::KappaRow> kappa_rows;
    if (!ratings_path.empty()) {
        const auto ratings = gsnrev::parse_ratings_csv(read_file(ratings_path));
        std::map<std::string, const gsnrev::ExperimentRecord*> by_id;
        for (const auto& record : records) by_id[record.record_id] = &record;
        std::vector<gsnrev::Sample> metric_samples;
        for (const auto& rating : ratings) {
            auto it = by_id.find(rating.record_id);
            if (it == by_id.end()) {
                std::cerr << "warning: rating references unknown record " << rating.record_id
                          << "\n";
                continue;
            }
            const auto& record = *it->second;
            const std::string llm = record.model.display();
            const std::string strategy(gsnrev::strategy_token(record.strategy));
            const std::string criterion(gsnrev::criterion_token(record.criterion));
            metric_samples.push_back(
                {llm, strategy, criterion, "informativeness", rating.informativeness});
            metric_samples.push_back({llm, strategy, criterion, "coherence", rating.coherence});
            metric_samples.push_back({llm, strategy, criterion, "usefulness", rating.usefulness});
        }
        metric_table = gsnrev::aggregate_mean(metric_samples);

        // Inter-model agreement per (criterion, strategy): subjects are
        // (case, run) pairs, raters are the models, categories the 1-5
        // score. Subjects missing any rater's score are dropped.
        std::set<std::string> model_set;
        for (const auto& record : records) model_set.insert(record.model.display());
        const std::vector<std::string> models(model_set.begin(), model_set.end());
        std::set<std::pair<std::string, std::string>> cells;
        for (const auto& s : scored) {
            cells.insert({std::string(gsnrev::criterion_token(s.record.criterion)),
                          std::string(gsnrev::strategy_token(s.record.strategy))});
        }
        for (const auto& [criterion, strategy] : cells) {
            std::map<std::string, std::map<std::string, int>> by_subject;
            for (const ScoredRecord& s : scored) {
                if (std::string(gsnrev::criterion_token(s.record.criterion)) != criterion ||
                    std::string(gsnrev::strategy_token(s.record.strategy)) != strategy ||
                    !s.score) {
                    continue;
                }
                by_subject[s.record.case_name + "#" + std::to_string(s.record.run_index)]
                          [s.record.model.display()] = *s.score;
            }
            std::map<std::string, std::vector<int>> complete;
            for (const auto& [subject, by_model] : by_subject) {
                if (by_model.size() != models.size()) continue;
                std::vector<int> row;
                for (const std::string& model : models) row.push_back(by_model.at(model));
                complete[subject] = std::move(row);
            }
            gsnrev::KappaRow row{criterion, strategy, std::nullopt};
            if (!complete.empty() && models.size() >= 2) {
                row.kappa = gsnrev::fleiss_kappa(gsnrev::build_rating_matrix(complete));
            }
            kappa_rows.push_back(std::move(row));
        }
    }

    if (as_json) {
        auto table_json = [](const gsnrev::AggregateTable& table) {
            json rows = json::array();
            for (const auto& [key, cell] : table.cells) {
                rows.push_back({{"llm", key.llm},
                                {"strategy", key.strategy},
                                {"criterion", key.criterion},
                                {"metric", key.metric},
                                {"mean", cell.mean()},
                                {"count", cell.count}});
            }
            return rows;
        };
        json doc{{"score_means", table_json(score_table)}};
        if (metric_table) doc["metric_means"] = table_json(*metric_table);
        if (!ratings_path.empty()) {
            json rows = json::array();
            for (const auto& row : kappa_rows) {
                rows.push_back({{"criterion", row.criterion},
                                {"strategy", row.strategy},
                                {"kappa", row.kappa ? json(*row.kappa) : json(nullptr)}});
            }
            doc["kappa"] = rows;
        }
        std::cout << doc.dump(2) << "\n";
        return kExitOk;
    }

    std::cout << "# mean LLM review scores\n" << gsnrev::export_table(score_table, format);
    if (metric_table) {
        std::cout << "\n# mean assessor ratings\n" << gsnrev::export_table(*metric_table, format);
        std::cout << "\n# inter-model agreement (Fleiss' kappa)\n"
                  << (format == gsnrev::TableFormat::Csv
                          ? gsnrev::export_kappa_csv(kappa_rows)
                          : gsnrev::export_kappa_markdown(kappa_rows));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GSN assurance case review toolchain"};
    app.require_subcommand(1);

    // validate
    auto* validate = app.add_subcommand("validate", "Statically check a structured-prose case");
    std::string validate_path;
    bool validate_json = false;
    validate->add_option("prose", validate_path, "Path to the .gsn file")->required();
    validate->add_flag("--json", validate_json, "Emit JSON");

    // compile
    auto* compile = app.add_subcommand("compile", "Compile the review prompt bundle for a case");
    std::string compile_case, compile_criterion, compile_strategy, compile_example;
    std::string compile_kind = "assurance case", compile_system_name;
    bool compile_strict = false, compile_json = false;
    compile->add_option("--case", compile_case, "Path to the .gsn file")->required();
    compile->add_option("--criterion", compile_criterion,
                        "arg-comp | well-formed | expr-suff | arg-crit")
        ->required();
    compile->add_option("--strategy", compile_strategy, "zs | zs-cot | os-cot")->required();
    compile->add_option("--example", compile_example,
                        "JSON file with case_prose and review (os-cot only)");
    compile->add_option("--case-kind", compile_kind, "e.g. 'safety case'");
    compile->add_option("--system-name", compile_system_name,
                        "System under review (default: file stem)");
    compile->add_flag("--strict-output", compile_strict,
                      "Request a machine-readable Score: <n> line");
    compile->add_flag("--json", compile_json, "Output is JSON already; accepted for symmetry");

    // review
    auto* review = app.add_subcommand("review", "Run a review experiment grid");
    std::string review_config;
    ReviewConfig config;
    std::vector<std::string> review_models;
    std::string review_corpus, review_store, review_example;
    bool review_json = false;
    int review_runs = -1, review_concurrency = -1;
    bool review_strict = false;
    review->add_option("--config", review_config, "JSON config file");
    review->add_option("--corpus", review_corpus, "Corpus manifest path");
    review->add_option("--store", review_store, "Record store directory");
    review->add_option("--model", review_models, "provider:model (repeatable)");
    review->add_option("--criterion", config.criteria, "Criterion token (repeatable)");
    review->add_option("--strategy", config.strategies, "Strategy token (repeatable)");
    review->add_option("--case", config.cases, "Case name filter (repeatable)");
    review->add_option("--example", review_example, "One-shot example JSON file");
    review->add_option("--runs", review_runs, "Runs per grid cell (default 5)");
    review->add_option("--concurrency", review_concurrency, "In-flight request cap (default 4)");
    review->add_flag("--strict-output", review_strict, "Request Score: <n> lines");
    review->add_flag("--json", review_json, "Emit JSON");

    // report
    auto* report = app.add_subcommand("report", "Aggregate stored records into tables");
    std::string report_store, report_ratings, report_format = "csv";
    bool report_json = false;
    report->add_option("--store", report_store, "Record store directory")->required();
    report->add_option("--ratings", report_ratings, "Assessor ratings CSV");
    report->add_option("--format", report_format, "csv | markdown");
    report->add_flag("--json", report_json, "Emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(validate_path, validate_json);
        if (*compile) {
            (void)compile_json;
            return cmd_compile(compile_case, compile_criterion, compile_strategy, compile_example,
                               compile_kind, compile_system_name, compile_strict);
        }
        if (*review) {
            if (!review_config.empty()) merge_config_file(config, review_config);
            if (!review_corpus.empty()) config.corpus = review_corpus;
            if (!review_store.empty()) config.store = review_store;
            if (!review_example.empty()) config.example = review_example;
            if (review_runs >= 0) config.runs = review_runs;
            if (review_concurrency >= 0) config.concurrency = review_concurrency;
            if (review_strict) config.strict_output = true;
            for (const std::string& spec : review_models) {
                config.models.push_back(parse_model_flag(spec));
            }
            return cmd_review(config, review_json);
        }
        if (*report) return cmd_report(report_store, report_ratings, report_format, report_json);
    } catch (const UsageError& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const gsnrev::ConfigError& err) {
        std::cerr << "configuration error: " << err.what() << "\n";
        return kExitEnvironment;
    } catch (const EnvironmentError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitEnvironment;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitEnvironment;
    }
    return kExitOk;
}
