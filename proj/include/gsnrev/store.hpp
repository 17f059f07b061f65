// Fixture corpus loading and experiment persistence. Records live as JSON
// Lines (one ExperimentRecord per line, UTF-8, '\n'-terminated); appends are
// atomic per record. Single writer, any number of readers.

#ifndef GSNREV_STORE_HPP
#define GSNREV_STORE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gsnrev/gateway.hpp"
#include "gsnrev/prose.hpp"

namespace gsnrev {

struct CorpusEntry {
    std::string name;
    std::string domain;
    std::string case_kind = "assurance case";  // "safety case" / "security case"
    std::filesystem::path prose_path;
    std::optional<int> expected_elements;
    std::optional<int> expected_relationships;
};

struct LoadedCase {
    CorpusEntry entry;
    std::string prose;  // raw file contents
    AssuranceCase assurance_case;
    std::vector<ParseDiagnostic> diagnostics;
    std::vector<std::string> warnings;  // expected-count mismatches etc.
};

// Manifest: JSON array of {name, domain, prose, case_kind?,
// expected_elements?, expected_relationships?}; prose paths resolve relative
// to the manifest. Throws std::runtime_error on a missing file or manifest
// syntax error; count mismatches are warnings on the entry, not errors.
std::vector<LoadedCase> load_corpus(const std::filesystem::path& manifest_path);

struct RecordFilter {
    std::optional<std::string> case_name;
    std::optional<std::string> provider_id;
    std::optional<std::string> model_id;
    std::optional<Strategy> strategy;
    std::optional<Criterion> criterion;
    std::optional<int> run_index;

    bool matches(const ExperimentRecord& record) const;
};

class ExperimentStore {
public:
    // Creates the directory when absent. Records append to records.jsonl;
    // load() reads every *.jsonl file in name order.
    explicit ExperimentStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    void append(const ExperimentRecord& record);

    // Filters compose conjunctively and never change record order.
    std::vector<ExperimentRecord> load(const RecordFilter& filter = {}) const;

    std::size_t record_count() const { return load().size(); }
    bool empty() const;

private:
    std::filesystem::path root_;
};

}  // namespace gsnrev

#endif  // GSNREV_STORE_HPP
