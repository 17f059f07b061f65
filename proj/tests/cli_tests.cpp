#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "support/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(GSNREV_CLI_BIN) + " " + args + " 2>&1";
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    std::size_t n;
    while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, n);
    }
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("gsnrev-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int value = 0;
        return value;
    }
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream stream(path, std::ios::binary);
    stream << content;
}

std::string corpus_path(const char* name) {
    return (gsnrev::testing::source_dir() / "corpus" / name).string();
}

}  // namespace

TEST_CASE("validate: minimal valid case exits 0 with no issues") {
    TempDir dir;
    write_file(dir.path / "ok.gsn", "G1: root\nSn1: evidence\nG1 is supported by Sn1\n");
    const RunResult result = run_cli("validate " + (dir.path / "ok.gsn").string());
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("0 issue(s)") != std::string::npos);
}

TEST_CASE("validate: the GPCA fixture exits 1 and lists the duplicate groups") {
    const RunResult result = run_cli("validate " + corpus_path("gpca.gsn"));
    CHECK(result.exit_code == 1);
    for (const char* label : {"G3", "G4", "G5", "G6", "G7"}) {
        CHECK_MESSAGE(result.output.find(std::string("label used 2 times: ") + label) !=
                          std::string::npos,
                      "missing duplicate group ", label);
    }
}

TEST_CASE("validate: nonexistent path exits 2") {
    const RunResult result = run_cli("validate /definitely/not/here.gsn");
    CHECK(result.exit_code == 2);
}

TEST_CASE("validate: undeveloped-only case is informational, exit 0") {
    TempDir dir;
    write_file(dir.path / "undev.gsn",
               "G1: root\nG2: open claim\nG2 is undeveloped\nG1 is supported by G2\n");
    const RunResult result = run_cli("validate " + (dir.path / "undev.gsn").string());
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("undeveloped-element") != std::string::npos);
}

TEST_CASE("validate --json emits a structured report") {
    const RunResult result = run_cli("validate --json " + corpus_path("im_server.gsn"));
    CHECK(result.exit_code == 1);
    const json doc = json::parse(result.output);
    CHECK(doc.at("case_name") == "im_server");
    CHECK(doc.at("ok") == false);
    bool saw_duplicate = false;
    for (const json& issue : doc.at("report").at("issues")) {
        if (issue.at("kind") == "duplicate-label") saw_duplicate = true;
    }
    CHECK(saw_duplicate);
}

TEST_CASE("compile: zs-cot bundle embeds the chain-of-thought block, deterministically") {
    const std::string args = "compile --case " + corpus_path("gpca.gsn") +
                             " --criterion well-formed --strategy zs-cot --case-kind \"safety "
                             "case\" --system-name GPCA";
    const RunResult first = run_cli(args);
    REQUIRE(first.exit_code == 0);
    const json doc = json::parse(first.output);
    CHECK(doc.at("system").get<std::string>().find("@Chain_Of_Thought") != std::string::npos);
    CHECK(doc.at("user").get<std::string>().find(
              "Using the Well-Formedness (Syntax) criterion, review the safety case of the "
              "GPCA.") != std::string::npos);
    CHECK(doc.at("fingerprint").get<std::string>().size() == 64);

    const RunResult second = run_cli(args);
    CHECK(second.output == first.output);
}

TEST_CASE("compile: os-cot without --example is a usage error (64)") {
    const RunResult result = run_cli("compile --case " + corpus_path("gpca.gsn") +
                                     " --criterion arg-comp --strategy os-cot");
    CHECK(result.exit_code == 64);
}

TEST_CASE("compile: bad enum tokens are usage errors (64)") {
    CHECK(run_cli("compile --case " + corpus_path("gpca.gsn") +
                  " --criterion nope --strategy zs")
              .exit_code == 64);
    CHECK(run_cli("compile --case " + corpus_path("gpca.gsn") +
                  " --criterion arg-comp --strategy nope")
              .exit_code == 64);
}

TEST_CASE("compile: os-cot with the shipped example compiles") {
    const RunResult result = run_cli(
        "compile --case " + corpus_path("baidu_apollo.gsn") +
        " --criterion arg-crit --strategy os-cot --example " +
        corpus_path("level4_ads_example.json") + " --case-kind \"safety case\" --system-name "
        "\"Baidu Apollo\"");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(doc.at("system").get<std::string>().find("@Assurance_Case_Review_Example") !=
          std::string::npos);
}

TEST_CASE("review: one case, four criteria, mock model, five runs gives 20 records") {
    TempDir dir;
    const RunResult result = run_cli(
        "review --corpus " + corpus_path("manifest.json") + " --store " +
        (dir.path / "store").string() +
        " --model mock:fixed-3 --strategy zs --runs 5 --case GPCA");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("20 record(s) appended") != std::string::npos);

    const RunResult report = run_cli("report --store " + (dir.path / "store").string());
    CHECK(report.exit_code == 0);
    CHECK(report.output.find("mock:fixed-3,zs,arg-comp,score,3.0000,5") != std::string::npos);
    CHECK(report.output.find("mock:fixed-3,zs,well-formed,score,3.0000,5") != std::string::npos);
}

TEST_CASE("review: live provider without credentials exits 2 before any record") {
    TempDir dir;
    unsetenv("GSNREV_OPENAI_API_KEY");
    const RunResult result = run_cli("review --corpus " + corpus_path("manifest.json") +
                                     " --store " + (dir.path / "store").string() +
                                     " --model openai:gpt-4o --strategy zs --runs 1");
    CHECK(result.exit_code == 2);
    CHECK_FALSE(fs::exists(dir.path / "store" / "records.jsonl"));
}

TEST_CASE("review honours a config file, flags override") {
    TempDir dir;
    write_file(dir.path / "config.json", R"({
      "corpus": ")" + corpus_path("manifest.json") + R"(",
      "store": "store-from-config",
      "models": [{"provider": "mock", "model": "fixed-2"}],
      "strategies": ["zs"],
      "criteria": ["arg-comp"],
      "cases": ["LMS"],
      "runs": 2
    })");
    const RunResult result =
        run_cli("review --config " + (dir.path / "config.json").string() + " --runs 1");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("1 record(s) appended") != std::string::npos);
    CHECK(fs::exists(dir.path / "store-from-config" / "records.jsonl"));
}

TEST_CASE("report: empty store exits 1 with a message") {
    TempDir dir;
    const RunResult result = run_cli("report --store " + (dir.path / "store").string());
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("store is empty") != std::string::npos);
}

TEST_CASE("report: ratings enable metric means and the derived kappa row") {
    TempDir dir;
    // Four mock judges: two score (Apollo=1, GPCA=1), two score (Apollo=2,
    // GPCA=1). Subjects are (case, run); with one run that is S1 = [1,1,2,2]
    // and S2 = [1,1,1,1], the worked Fleiss example with kappa 1/9.
    write_file(dir.path / "config.json", R"({
      "corpus": ")" + corpus_path("manifest.json") + R"(",
      "store": "store",
      "models": [
        {"provider": "mock", "model": "judge-a", "params": {"scores": "Baidu Apollo=1;GPCA=1"}},
        {"provider": "mock", "model": "judge-b", "params": {"scores": "Baidu Apollo=1;GPCA=1"}},
        {"provider": "mock", "model": "judge-c", "params": {"scores": "Baidu Apollo=2;GPCA=1"}},
        {"provider": "mock", "model": "judge-d", "params": {"scores": "Baidu Apollo=2;GPCA=1"}}
      ],
      "strategies": ["zs"],
      "criteria": ["arg-comp"],
      "cases": ["Baidu Apollo", "GPCA"],
      "runs": 1
    })");
    const RunResult review =
        run_cli("review --json --config " + (dir.path / "config.json").string());
    REQUIRE(review.exit_code == 0);
    const json summary = json::parse(review.output);
    REQUIRE(summary.at("emitted") == 8);

    // Rate the first two records; the metric means derive from these rows.
    std::string ratings = "record_id,assessor_id,informativeness,coherence,usefulness\n";
    ratings += summary.at("records")[0].at("record_id").get<std::string>() + ",a1,1,2,3\n";
    ratings += summary.at("records")[1].at("record_id").get<std::string>() + ",a1,3,4,5\n";
    write_file(dir.path / "ratings.csv", ratings);

    const RunResult report = run_cli("report --store " + (dir.path / "store").string() +
                                     " --ratings " + (dir.path / "ratings.csv").string());
    REQUIRE(report.exit_code == 0);
    CHECK(report.output.find("arg-comp,zs,0.1111") != std::string::npos);
    CHECK(report.output.find("mock:judge-a,zs,arg-comp,coherence,2.0000,1") !=
          std::string::npos);
    CHECK(report.output.find("mock:judge-b,zs,arg-comp,usefulness,5.0000,1") !=
          std::string::npos);

    // Perfect four-model agreement on scores, two categories across
    // subjects, gives kappa exactly 1.
    TempDir agree;
    write_file(agree.path / "config.json", R"({
      "corpus": ")" + corpus_path("manifest.json") + R"(",
      "store": "store",
      "models": [
        {"provider": "mock", "model": "judge-a", "params": {"scores": "Baidu Apollo=2;GPCA=4"}},
        {"provider": "mock", "model": "judge-b", "params": {"scores": "Baidu Apollo=2;GPCA=4"}},
        {"provider": "mock", "model": "judge-c", "params": {"scores": "Baidu Apollo=2;GPCA=4"}},
        {"provider": "mock", "model": "judge-d", "params": {"scores": "Baidu Apollo=2;GPCA=4"}}
      ],
      "strategies": ["zs"],
      "criteria": ["arg-comp", "well-formed"],
      "cases": ["Baidu Apollo", "GPCA"],
      "runs": 1
    })");
    REQUIRE(run_cli("review --config " + (agree.path / "config.json").string()).exit_code == 0);
    write_file(agree.path / "ratings.csv",
               "record_id,assessor_id,informativeness,coherence,usefulness\n");
    const RunResult agree_report =
        run_cli("report --store " + (agree.path / "store").string() + " --ratings " +
                (agree.path / "ratings.csv").string());
    REQUIRE(agree_report.exit_code == 0);
    CHECK(agree_report.output.find("arg-comp,zs,1.0000") != std::string::npos);
    CHECK(agree_report.output.find("well-formed,zs,1.0000") != std::string::npos);
}

TEST_CASE("report --json emits structured output") {
    TempDir dir;
    REQUIRE(run_cli("review --corpus " + corpus_path("manifest.json") + " --store " +
                    (dir.path / "store").string() +
                    " --model mock:fixed-4 --strategy zs --criterion arg-comp --runs 2 --case "
                    "LMS")
                .exit_code == 0);
    const RunResult report =
        run_cli("report --json --store " + (dir.path / "store").string());
    REQUIRE(report.exit_code == 0);
    const json doc = json::parse(report.output);
    REQUIRE(doc.at("score_means").size() == 1);
    CHECK(doc.at("score_means")[0].at("mean") == 4.0);
    CHECK(doc.at("score_means")[0].at("count") == 2);
}

TEST_CASE("usage: missing subcommand or unknown flags exit 64") {
    CHECK(run_cli("").exit_code == 64);
    CHECK(run_cli("report").exit_code == 64);  // --store is required
    CHECK(run_cli("frobnicate").exit_code == 64);
}


#include "support/minischema.hpp"

namespace {

gsnrev::testing::MiniSchema schema(const char* name) {
    return gsnrev::testing::MiniSchema(json::parse(
        gsnrev::testing::read_file(gsnrev::testing::source_dir() / "schemas" / name)));
}

}  // namespace

TEST_CASE("JSON outputs validate against the shipped schemas") {
    TempDir dir;

    const RunResult validate = run_cli("validate --json " + corpus_path("gpca.gsn"));
    CHECK(schema("validate.schema.json").validate(json::parse(validate.output)) == "");

    const RunResult compile =
        run_cli("compile --case " + corpus_path("lms.gsn") +
                " --criterion expr-suff --strategy zs --case-kind \"safety case\"");
    REQUIRE(compile.exit_code == 0);
    CHECK(schema("bundle.schema.json").validate(json::parse(compile.output)) == "");

    const RunResult review = run_cli(
        "review --json --corpus " + corpus_path("manifest.json") + " --store " +
        (dir.path / "store").string() +
        " --model mock:vary --strategy zs --criterion well-formed --runs 2 --case GPCA");
    REQUIRE(review.exit_code == 0);
    CHECK(schema("review_summary.schema.json").validate(json::parse(review.output)) == "");

    // Every stored line is itself a schema-conforming record.
    const auto record_schema = schema("record.schema.json");
    std::ifstream records(dir.path / "store" / "records.jsonl");
    std::string line;
    int lines = 0;
    while (std::getline(records, line)) {
        ++lines;
        CHECK(record_schema.validate(json::parse(line)) == "");
    }
    CHECK(lines == 2);

    const RunResult report = run_cli("report --json --store " + (dir.path / "store").string());
    REQUIRE(report.exit_code == 0);
    CHECK(schema("report.schema.json").validate(json::parse(report.output)) == "");

    // Reports are idempotent for identical inputs.
    CHECK(run_cli("report --json --store " + (dir.path / "store").string()).output ==
          report.output);
}

TEST_CASE("full paper grid through the CLI yields 960 stored records") {
    TempDir dir;
    const RunResult result = run_cli(
        "review --corpus " + corpus_path("manifest.json") + " --store " +
        (dir.path / "store").string() + " --model mock:judge-a --model mock:judge-b --model "
        "mock:judge-c --model mock:judge-d --runs 5 --example " +
        corpus_path("level4_ads_example.json"));
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("960 record(s) appended") != std::string::npos);

    std::ifstream records(dir.path / "store" / "records.jsonl");
    int lines = 0;
    std::string line;
    while (std::getline(records, line)) ++lines;
    CHECK(lines == 960);
}
