#include "gsnrev/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gsnrev {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw std::runtime_error("cannot read file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

}  // namespace

std::vector<LoadedCase> load_corpus(const std::filesystem::path& manifest_path) {
    const std::string manifest_text = read_file(manifest_path);
    nlohmann::json manifest = nlohmann::json::parse(manifest_text, nullptr, false);
    if (manifest.is_discarded() || !manifest.is_array()) {
        throw std::runtime_error("corpus manifest is not a JSON array: " + manifest_path.string());
    }
    const std::filesystem::path base = manifest_path.parent_path();

    std::vector<LoadedCase> corpus;
    for (const nlohmann::json& item : manifest) {
        if (!item.is_object() || !item.contains("name") || !item.contains("prose")) {
            throw std::runtime_error("corpus manifest entry needs 'name' and 'prose' fields");
        }
        LoadedCase loaded;
        loaded.entry.name = item.at("name").get<std::string>();
        loaded.entry.domain = item.value("domain", "");
        loaded.entry.case_kind = item.value("case_kind", "assurance case");
        loaded.entry.prose_path = base / item.at("prose").get<std::string>();
        if (item.contains("expected_elements")) {
            loaded.entry.expected_elements = item["expected_elements"].get<int>();
        }
        if (item.contains("expected_relationships")) {
            loaded.entry.expected_relationships = item["expected_relationships"].get<int>();
        }

        loaded.prose = read_file(loaded.entry.prose_path);
        ParseResult parsed = parse_prose(loaded.prose, loaded.entry.name);
        loaded.assurance_case = std::move(parsed.assurance_case);
        loaded.diagnostics = std::move(parsed.diagnostics);

        const auto [elements, relationships] = loaded.assurance_case.counts();
        if (loaded.entry.expected_elements &&
            *loaded.entry.expected_elements != static_cast<int>(elements)) {
            loaded.warnings.push_back(
                "entry '" + loaded.entry.name + "': expected " +
                std::to_string(*loaded.entry.expected_elements) + " elements, parsed " +
                std::to_string(elements));
        }
        if (loaded.entry.expected_relationships &&
            *loaded.entry.expected_relationships != static_cast<int>(relationships)) {
            loaded.warnings.push_back(
                "entry '" + loaded.entry.name + "': expected " +
                std::to_string(*loaded.entry.expected_relationships) + " relationships, parsed " +
                std::to_string(relationships));
        }
        corpus.push_back(std::move(loaded));
    }
    return corpus;
}

bool RecordFilter::matches(const ExperimentRecord& record) const {
    if (case_name && *case_name != record.case_name) return false;
    if (provider_id && *provider_id != record.model.provider_id) return false;
    if (model_id && *model_id != record.model.model_id) return false;
    if (strategy && *strategy != record.strategy) return false;
    if (criterion && *criterion != record.criterion) return false;
    if (run_index && *run_index != record.run_index) return false;
    return true;
}

ExperimentStore::ExperimentStore(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_);
}

void ExperimentStore::append(const ExperimentRecord& record) {
    const std::string line = record_to_jsonl(record) + "\n";
    const std::filesystem::path path = root_ / "records.jsonl";
    // One O_APPEND write per record keeps a crash from tearing a line in
    // half across two records.
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) {
        throw std::runtime_error("cannot open record file for append: " + path.string());
    }
    std::size_t written = 0;
    while (written < line.size()) {
        const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
        if (n < 0) {
            ::close(fd);
            throw std::runtime_error("write failed on record file: " + path.string());
        }
        written += static_cast<std::size_t>(n);
    }
    ::close(fd);
}

std::vector<ExperimentRecord> ExperimentStore::load(const RecordFilter& filter) const {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::exists(root_)) {
        for (const auto& entry : std::filesystem::directory_iterator(root_)) {
            if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
                files.push_back(entry.path());
            }
        }
    }
    std::sort(files.begin(), files.end());

    std::vector<ExperimentRecord> records;
    for (const std::filesystem::path& file : files) {
        std::ifstream stream(file);
        if (!stream) {
            throw std::runtime_error("cannot read record file: " + file.string());
        }
        std::string line;
        while (std::getline(stream, line)) {
            if (line.empty()) continue;
            ExperimentRecord record = record_from_jsonl(line);
            if (filter.matches(record)) records.push_back(std::move(record));
        }
    }
    return records;
}

bool ExperimentStore::empty() const {
    if (!std::filesystem::exists(root_)) return true;
    for (const auto& entry : std::filesystem::directory_iterator(root_)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl" &&
            entry.file_size() > 0) {
            return false;
        }
    }
    return true;
}

}  // namespace gsnrev
