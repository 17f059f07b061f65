// Compiles review prompts from (case, criterion, strategy, optional one-shot
// example). The system prompt skeletons, the GSN context block, the criterion
// descriptions, and the per-criterion chain-of-thought blocks are byte-frozen
// resources; compilation only substitutes their placeholder lines.

#ifndef GSNREV_PROMPT_HPP
#define GSNREV_PROMPT_HPP

#include <optional>
#include <string>
#include <string_view>

#include "gsnrev/case.hpp"

namespace gsnrev {

enum class Criterion {
    ArgumentComprehension,
    WellFormedness,
    ExpressiveSufficiency,
    ArgumentCriticismAndDefeat,
};
inline constexpr Criterion kAllCriteria[] = {
    Criterion::ArgumentComprehension,
    Criterion::WellFormedness,
    Criterion::ExpressiveSufficiency,
    Criterion::ArgumentCriticismAndDefeat,
};

enum class Strategy { ZeroShot, ZeroShotCoT, OneShotCoT };
inline constexpr Strategy kAllStrategies[] = {
    Strategy::ZeroShot,
    Strategy::ZeroShotCoT,
    Strategy::OneShotCoT,
};

struct OneShotExample {
    std::string case_prose;  // structured prose of the example case
    std::string review;      // outcome of the manual review of that case
};

struct PromptBundle {
    std::string system_prompt;
    std::string user_prompt;
    std::string fingerprint;  // sha256(system + '\n' + user), lowercase hex
};

struct CompileOptions {
    // Off by default to preserve template fidelity; when on, one extra
    // sentence asks for a machine-readable "Score: <n>" line.
    bool strict_output = false;
};

// GSN context text placed between @Context_AC and @End_Context_AC.
std::string_view context_block();

// Heading and paragraph of the criterion's review description.
std::string_view criterion_display_name(Criterion criterion);
std::string_view criterion_description(Criterion criterion);

// Chain-of-thought template for the criterion, including the predicate
// notation definitions embedded in it.
std::string_view cot_block(Criterion criterion);

// The raw system prompt skeleton for the strategy, placeholders included.
std::string_view template_skeleton(Strategy strategy);

// Throws std::invalid_argument when the example is missing for OneShotCoT or
// supplied for another strategy.
std::string compile_system_prompt(std::string_view case_prose, Criterion criterion,
                                  Strategy strategy,
                                  const std::optional<OneShotExample>& example = std::nullopt,
                                  const CompileOptions& options = {});

// "Using the <criterion> criterion, review the <case kind> of the <system>. ..."
std::string compile_user_prompt(std::string_view case_kind, std::string_view system_name,
                                Criterion criterion);

PromptBundle compile(const AssuranceCase& ac, std::string_view case_kind, Criterion criterion,
                     Strategy strategy,
                     const std::optional<OneShotExample>& example = std::nullopt,
                     const CompileOptions& options = {});

// Same bundle from already-serialized prose (what the orchestrator and the
// CLI hold); compile() is this plus serialize_prose.
PromptBundle compile_from_prose(std::string_view case_prose, std::string_view case_kind,
                                std::string_view system_name, Criterion criterion,
                                Strategy strategy,
                                const std::optional<OneShotExample>& example = std::nullopt,
                                const CompileOptions& options = {});

std::string bundle_to_json(const PromptBundle& bundle);

// Flag spellings used by the CLI and in stored records.
std::string_view criterion_token(Criterion criterion);  // arg-comp | well-formed | expr-suff | arg-crit
std::string_view strategy_token(Strategy strategy);     // zs | zs-cot | os-cot
std::optional<Criterion> criterion_from_token(std::string_view token);
std::optional<Strategy> strategy_from_token(std::string_view token);

namespace templates {
extern const std::string_view kContextBlock;
extern const std::string_view kDescArgComp;
extern const std::string_view kDescWellFormed;
extern const std::string_view kDescExprSuff;
extern const std::string_view kDescArgCrit;
extern const std::string_view kCotArgComp;
extern const std::string_view kCotWellFormed;
extern const std::string_view kCotExprSuff;
extern const std::string_view kCotArgCrit;
extern const std::string_view kSkeletonZeroShot;
extern const std::string_view kSkeletonZeroShotCot;
extern const std::string_view kSkeletonOneShotCot;
}  // namespace templates

}  // namespace gsnrev

#endif  // GSNREV_PROMPT_HPP
