#include <doctest.h>

#include <set>

#include "gsnrev/digest.hpp"
#include "gsnrev/prompt.hpp"
#include "gsnrev/prose.hpp"
#include "support/generators.hpp"
#include "support/io.hpp"

using namespace gsnrev;
using gsnrev::testing::Rng;

TEST_SUITE_BEGIN("prompt");

namespace {

OneShotExample sample_example() {
    return OneShotExample{"G1: The shuttle turns right safely.\nSn1: Field trial logs.\n"
                          "G1 is supported by Sn1\n",
                          "Issue(G1, The claim omits the operational domain.)\nScore: 2\n"};
}

AssuranceCase sample_case() {
    auto [ac, diagnostics] = parse_prose(
        "G1: The pump never overdoses the patient.\nSn1: Dosage interlock test report.\n"
        "G1 is supported by Sn1\n",
        "GPCA");
    return std::move(ac);
}

// Block markers are lines consisting solely of "@Name"; prose mentions of the
// delimiters are quoted and never fill a whole line.
std::vector<std::string> marker_lines(const std::string& prompt) {
    std::vector<std::string> markers;
    std::size_t pos = 0;
    while (pos <= prompt.size()) {
        const std::size_t eol = prompt.find('\n', pos);
        const std::string line =
            prompt.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        if (!line.empty() && line[0] == '@' &&
            line.find_first_not_of(
                "@_ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz") == std::string::npos) {
            markers.push_back(line);
        }
        if (eol == std::string::npos) break;
        pos = eol + 1;
    }
    return markers;
}

void check_delimiter_pairing(const std::string& prompt) {
    const std::vector<std::string> markers = marker_lines(prompt);
    std::set<std::string> seen;
    std::vector<std::string> open;
    for (const std::string& marker : markers) {
        CHECK_MESSAGE(!seen.count(marker), "marker appears twice: ", marker);
        seen.insert(marker);
        if (marker.rfind("@End_", 0) == 0) {
            REQUIRE_FALSE(open.empty());
            CHECK("@End_" + open.back().substr(1) == marker);
            open.pop_back();
        } else {
            open.push_back(marker);
        }
    }
    CHECK(open.empty());
}

}  // namespace

TEST_CASE("context block matches the frozen copy and is constant") {
    CHECK(std::string(context_block()) == testing::golden("context_block.txt"));
    CHECK(context_block().find("Goal – A goal is represented by a rectangle") !=
          std::string_view::npos);
    CHECK(context_block() == context_block());
    for (const char* item : {"1. Goal", "2. Strategy", "3. Solution", "4. Context",
                             "5. Assumption", "6. Justification"}) {
        CHECK(context_block().find(item) != std::string_view::npos);
    }
}

TEST_CASE("criterion descriptions match the frozen copies and are distinct") {
    CHECK(std::string(criterion_description(Criterion::ArgumentComprehension)) ==
          testing::golden("desc_arg_comp.txt"));
    CHECK(std::string(criterion_description(Criterion::WellFormedness)) ==
          testing::golden("desc_well_formed.txt"));
    CHECK(std::string(criterion_description(Criterion::ExpressiveSufficiency)) ==
          testing::golden("desc_expr_suff.txt"));
    CHECK(std::string(criterion_description(Criterion::ArgumentCriticismAndDefeat)) ==
          testing::golden("desc_arg_crit.txt"));

    CHECK(criterion_description(Criterion::WellFormedness)
              .find("identify the claims on each argument without the need") !=
          std::string_view::npos);
    CHECK(criterion_description(Criterion::ArgumentCriticismAndDefeat)
              .find("list out the defeaters") != std::string_view::npos);

    std::set<std::string> distinct;
    for (Criterion c : kAllCriteria) {
        CHECK_FALSE(criterion_description(c).empty());
        distinct.insert(std::string(criterion_description(c)));
    }
    CHECK(distinct.size() == 4);
}

TEST_CASE("cot blocks match the frozen copies") {
    CHECK(std::string(cot_block(Criterion::ArgumentComprehension)) ==
          testing::golden("cot_arg_comp.txt"));
    CHECK(std::string(cot_block(Criterion::WellFormedness)) ==
          testing::golden("cot_well_formed.txt"));
    CHECK(std::string(cot_block(Criterion::ExpressiveSufficiency)) ==
          testing::golden("cot_expr_suff.txt"));
    CHECK(std::string(cot_block(Criterion::ArgumentCriticismAndDefeat)) ==
          testing::golden("cot_arg_crit.txt"));

    CHECK(cot_block(Criterion::ArgumentComprehension).find("Issue(") != std::string_view::npos);
    CHECK(cot_block(Criterion::ArgumentComprehension).find("Suggest(") != std::string_view::npos);
    CHECK(cot_block(Criterion::WellFormedness).find("<(") != std::string_view::npos);
    CHECK(cot_block(Criterion::ExpressiveSufficiency)
              .find("ambiguous and need further explanation") != std::string_view::npos);
    CHECK(cot_block(Criterion::ArgumentCriticismAndDefeat).find("Defeaters(") !=
          std::string_view::npos);
}

TEST_CASE("skeletons match the frozen copies") {
    CHECK(std::string(template_skeleton(Strategy::ZeroShot)) == testing::golden("skeleton_zs.txt"));
    CHECK(std::string(template_skeleton(Strategy::ZeroShotCoT)) ==
          testing::golden("skeleton_zs_cot.txt"));
    CHECK(std::string(template_skeleton(Strategy::OneShotCoT)) ==
          testing::golden("skeleton_os_cot.txt"));
}

TEST_CASE("zero-shot system prompt carries the criterion blocks but no CoT") {
    const AssuranceCase ac = sample_case();
    const std::string prompt = compile_system_prompt(serialize_prose(ac),
                                                     Criterion::ArgumentComprehension,
                                                     Strategy::ZeroShot);
    CHECK(prompt.find("\n@Review_Criterion\n") != std::string::npos);
    CHECK(prompt.find("@Chain_Of_Thought") == std::string::npos);
    CHECK(prompt.find("The pump never overdoses the patient.") != std::string::npos);
}

TEST_CASE("zero-shot CoT embeds the chain-of-thought block exactly once") {
    const AssuranceCase ac = sample_case();
    const std::string prompt = compile_system_prompt(
        serialize_prose(ac), Criterion::WellFormedness, Strategy::ZeroShotCoT);
    std::size_t count = 0;
    for (std::size_t pos = prompt.find("@Chain_Of_Thought"); pos != std::string::npos;
         pos = prompt.find("@Chain_Of_Thought", pos + 1)) {
        // Count only the block markers, not the prose mentions in quotes.
        if ((pos == 0 || prompt[pos - 1] == '\n') &&
            prompt.compare(pos, sizeof("@Chain_Of_Thought\n") - 1, "@Chain_Of_Thought\n") == 0) {
            ++count;
        }
    }
    CHECK(count == 1);
    CHECK(prompt.find(cot_block(Criterion::WellFormedness)) != std::string::npos);
}

TEST_CASE("one-shot CoT embeds the example blocks") {
    const AssuranceCase ac = sample_case();
    const std::string prompt =
        compile_system_prompt(serialize_prose(ac), Criterion::ArgumentCriticismAndDefeat,
                              Strategy::OneShotCoT, sample_example());
    CHECK(prompt.find("@Assurance_Case_Review_Example") != std::string::npos);
    CHECK(prompt.find("@Example_Of_Review_Done_On_The_Example_Assurance_Case") !=
          std::string::npos);
    CHECK(prompt.find(sample_example().case_prose) != std::string::npos);
    CHECK(prompt.find(sample_example().review) != std::string::npos);
}

TEST_CASE("example presence is enforced per strategy") {
    const AssuranceCase ac = sample_case();
    const std::string prose = serialize_prose(ac);
    CHECK_THROWS_AS(compile_system_prompt(prose, Criterion::WellFormedness, Strategy::OneShotCoT),
                    std::invalid_argument);
    CHECK_THROWS_AS(compile_system_prompt(prose, Criterion::WellFormedness, Strategy::ZeroShot,
                                          sample_example()),
                    std::invalid_argument);
    CHECK_THROWS_AS(compile_system_prompt(prose, Criterion::WellFormedness, Strategy::OneShotCoT,
                                          OneShotExample{"", ""}),
                    std::invalid_argument);
}

TEST_CASE("strategy monotonicity: CoT strategies extend the zero-shot content") {
    const AssuranceCase ac = sample_case();
    const std::string prose = serialize_prose(ac);
    for (Criterion criterion : kAllCriteria) {
        const std::string zs =
            compile_system_prompt(prose, criterion, Strategy::ZeroShot);
        const std::string zs_cot =
            compile_system_prompt(prose, criterion, Strategy::ZeroShotCoT);
        const std::string os_cot = compile_system_prompt(prose, criterion, Strategy::OneShotCoT,
                                                         sample_example());
        // Every content block of the zero-shot prompt reappears verbatim.
        for (const std::string_view block :
             {std::string_view(context_block()), std::string_view(prose),
              criterion_display_name(criterion), criterion_description(criterion)}) {
            CHECK(zs.find(block) != std::string::npos);
            CHECK(zs_cot.find(block) != std::string::npos);
            CHECK(os_cot.find(block) != std::string::npos);
        }
        CHECK(zs_cot.find(cot_block(criterion)) != std::string::npos);
        CHECK(os_cot.find(cot_block(criterion)) != std::string::npos);
        CHECK(zs.find("@Chain_Of_Thought") == std::string::npos);
        CHECK(zs_cot.find("@Assurance_Case_Review_Example") == std::string::npos);
    }
}

TEST_CASE("user prompt renders the published sentence") {
    CHECK(compile_user_prompt("safety case", "Baidu Apollo", Criterion::ArgumentComprehension) ==
          "Using the Argument Comprehension criterion, review the safety case of the Baidu "
          "Apollo. Once finished display the results accordingly as to how the review should be "
          "conducted.");
    CHECK(compile_user_prompt("security case", "IM server software", Criterion::WellFormedness) ==
          "Using the Well-Formedness (Syntax) criterion, review the security case of the IM "
          "server software. Once finished display the results accordingly as to how the review "
          "should be conducted.");
    CHECK(compile_user_prompt("safety case", "LMS", Criterion::ExpressiveSufficiency) ==
          compile_user_prompt("safety case", "LMS", Criterion::ExpressiveSufficiency));
    CHECK_THROWS_AS(compile_user_prompt("", "LMS", Criterion::WellFormedness),
                    std::invalid_argument);
}

TEST_CASE("compile produces deterministic fingerprints") {
    const AssuranceCase ac = sample_case();
    const PromptBundle a = compile(ac, "safety case", Criterion::WellFormedness,
                                   Strategy::ZeroShotCoT);
    const PromptBundle b = compile(ac, "safety case", Criterion::WellFormedness,
                                   Strategy::ZeroShotCoT);
    CHECK(a.fingerprint == b.fingerprint);
    CHECK(a.fingerprint == sha256_hex(a.system_prompt + "\n" + a.user_prompt));
    CHECK(a.fingerprint.size() == 64);
}

TEST_CASE("grid of cases x criteria x strategies has pairwise distinct fingerprints") {
    Rng rng(6060);
    std::vector<AssuranceCase> cases;
    for (int i = 0; i < 4; ++i) {
        AssuranceCase ac("System " + std::to_string(i));
        const auto g = ac.add_element("G1", ElementKind::Goal,
                                      "claim variant " + std::to_string(i), false);
        const auto sn = ac.add_element("Sn1", ElementKind::Solution, "evidence", false);
        ac.add_relationship(Endpoint::resolved(g), Endpoint::resolved(sn),
                            RelationKind::SupportedBy);
        cases.push_back(std::move(ac));
    }
    std::set<std::string> zero_shot_prints;
    std::set<std::string> all_prints;
    for (const AssuranceCase& ac : cases) {
        for (Criterion criterion : kAllCriteria) {
            for (Strategy strategy : kAllStrategies) {
                std::optional<OneShotExample> example;
                if (strategy == Strategy::OneShotCoT) example = sample_example();
                const PromptBundle bundle = compile(ac, "safety case", criterion, strategy,
                                                    example);
                if (strategy == Strategy::ZeroShot) zero_shot_prints.insert(bundle.fingerprint);
                all_prints.insert(bundle.fingerprint);
            }
        }
    }
    CHECK(zero_shot_prints.size() == 16);
    CHECK(all_prints.size() == 48);
}

TEST_CASE("delimiter pairing holds on randomized compilations") {
    Rng rng(515151);
    testing::CaseOptions options;
    options.allow_naming_violations = false;
    for (int trial = 0; trial < 200; ++trial) {
        const AssuranceCase ac = testing::random_case(rng, options);
        const Criterion criterion = kAllCriteria[rng.below(4)];
        const Strategy strategy = kAllStrategies[rng.below(3)];
        std::optional<OneShotExample> example;
        if (strategy == Strategy::OneShotCoT) example = sample_example();
        CompileOptions compile_options;
        compile_options.strict_output = rng.chance(30);
        const std::string prompt = compile_system_prompt(serialize_prose(ac), criterion, strategy,
                                                         example, compile_options);
        check_delimiter_pairing(prompt);
    }
}

TEST_CASE("strict output appends exactly one extra sentence") {
    const AssuranceCase ac = sample_case();
    const std::string plain =
        compile_system_prompt(serialize_prose(ac), Criterion::WellFormedness, Strategy::ZeroShot);
    CompileOptions options;
    options.strict_output = true;
    const std::string strict = compile_system_prompt(serialize_prose(ac),
                                                     Criterion::WellFormedness, Strategy::ZeroShot,
                                                     std::nullopt, options);
    CHECK(strict.rfind(plain, 0) == 0);
    CHECK(strict.size() > plain.size());
    CHECK(strict.find("\"Score: <n>\"") != std::string::npos);
    CHECK(plain.find("\"Score: <n>\"") == std::string::npos);
}

TEST_CASE("bundle JSON carries system, user and fingerprint") {
    const AssuranceCase ac = sample_case();
    const PromptBundle bundle = compile(ac, "safety case", Criterion::ArgumentComprehension,
                                        Strategy::ZeroShot);
    const std::string json = bundle_to_json(bundle);
    CHECK(json.find("\"system\"") != std::string::npos);
    CHECK(json.find("\"user\"") != std::string::npos);
    CHECK(json.find(bundle.fingerprint) != std::string::npos);
}

TEST_CASE("token spellings round-trip") {
    for (Criterion c : kAllCriteria) CHECK(criterion_from_token(criterion_token(c)) == c);
    for (Strategy s : kAllStrategies) CHECK(strategy_from_token(strategy_token(s)) == s);
    CHECK_FALSE(criterion_from_token("nope").has_value());
    CHECK_FALSE(strategy_from_token("zero").has_value());
}

TEST_SUITE_END();
