#include "gsnrev/prompt.hpp"

#include <stdexcept>

#include <json.hpp>

#include "gsnrev/digest.hpp"
#include "gsnrev/prose.hpp"

namespace gsnrev {

namespace {

// Placeholder lines inside the frozen skeletons. Substitution happens on the
// whole line, so the skeleton text around it stays untouched.
constexpr std::string_view kSlotContext =
    "More Context Information on the assurance case to be placed here";
constexpr std::string_view kSlotCase =
    "The Assurance Case to be reviewed should be specified here in the structured prose format "
    "complying with GSN";
constexpr std::string_view kSlotCriterionName = "Name of the review criterion to be specified here";
constexpr std::string_view kSlotCriterionDescription =
    "Description of the review criterion to be placed here";
constexpr std::string_view kSlotCotZeroShot = "Chain of Thought text to be added here";
constexpr std::string_view kSlotCotOneShot = "Chain of thought text to be added here";
constexpr std::string_view kSlotExampleCase =
    "Example of manually reviewed assurance case to be added here";
constexpr std::string_view kSlotExampleReview =
    "Outcomes of the manual review done on the example assurance case to be added here";

constexpr std::string_view kStrictOutputSentence =
    "After completing the review, also print the final score on a separate line in the exact "
    "format \"Score: <n>\".";

void substitute_once(std::string& text, std::string_view slot, std::string_view content) {
    const std::size_t pos = text.find(slot);
    if (pos == std::string::npos) {
        throw std::logic_error("template slot missing: " + std::string(slot));
    }
    text.replace(pos, slot.size(), content);
}

}  // namespace

std::string_view context_block() { return templates::kContextBlock; }

std::string_view criterion_display_name(Criterion criterion) {
    switch (criterion) {
        case Criterion::ArgumentComprehension: return "Argument Comprehension";
        case Criterion::WellFormedness: return "Well-Formedness (Syntax)";
        case Criterion::ExpressiveSufficiency: return "Expressive Sufficiency";
        case Criterion::ArgumentCriticismAndDefeat: return "Argument Criticism and Defeat";
    }
    return {};
}

std::string_view criterion_description(Criterion criterion) {
    switch (criterion) {
        case Criterion::ArgumentComprehension: return templates::kDescArgComp;
        case Criterion::WellFormedness: return templates::kDescWellFormed;
        case Criterion::ExpressiveSufficiency: return templates::kDescExprSuff;
        case Criterion::ArgumentCriticismAndDefeat: return templates::kDescArgCrit;
    }
    return {};
}

std::string_view cot_block(Criterion criterion) {
    switch (criterion) {
        case Criterion::ArgumentComprehension: return templates::kCotArgComp;
        case Criterion::WellFormedness: return templates::kCotWellFormed;
        case Criterion::ExpressiveSufficiency: return templates::kCotExprSuff;
        case Criterion::ArgumentCriticismAndDefeat: return templates::kCotArgCrit;
    }
    return {};
}

std::string_view template_skeleton(Strategy strategy) {
    switch (strategy) {
        case Strategy::ZeroShot: return templates::kSkeletonZeroShot;
        case Strategy::ZeroShotCoT: return templates::kSkeletonZeroShotCot;
        case Strategy::OneShotCoT: return templates::kSkeletonOneShotCot;
    }
    return {};
}

std::string compile_system_prompt(std::string_view case_prose, Criterion criterion,
                                  Strategy strategy, const std::optional<OneShotExample>& example,
                                  const CompileOptions& options) {
    if (strategy == Strategy::OneShotCoT) {
        if (!example) {
            throw std::invalid_argument("one-shot strategy requires a review example");
        }
        if (example->case_prose.empty() || example->review.empty()) {
            throw std::invalid_argument("one-shot example fields must be non-empty");
        }
    } else if (example) {
        throw std::invalid_argument("a review example is only valid with the one-shot strategy");
    }

    // Substitution runs in reverse template order so that substituted content
    // which happens to contain an earlier placeholder's text can never be
    // picked up by a later find-first.
    std::string prompt(template_skeleton(strategy));
    if (strategy == Strategy::OneShotCoT) {
        substitute_once(prompt, kSlotExampleReview, example->review);
        substitute_once(prompt, kSlotExampleCase, example->case_prose);
        substitute_once(prompt, kSlotCotOneShot, cot_block(criterion));
    } else if (strategy == Strategy::ZeroShotCoT) {
        substitute_once(prompt, kSlotCotZeroShot, cot_block(criterion));
    }
    substitute_once(prompt, kSlotCriterionDescription, criterion_description(criterion));
    substitute_once(prompt, kSlotCriterionName, criterion_display_name(criterion));
    substitute_once(prompt, kSlotCase, case_prose);
    substitute_once(prompt, kSlotContext, context_block());
    if (options.strict_output) {
        prompt.push_back('\n');
        prompt.append(kStrictOutputSentence);
    }
    return prompt;
}

std::string compile_user_prompt(std::string_view case_kind, std::string_view system_name,
                                Criterion criterion) {
    if (case_kind.empty() || system_name.empty()) {
        throw std::invalid_argument("case kind and system name must be non-empty");
    }
    std::string prompt = "Using the ";
    prompt.append(criterion_display_name(criterion));
    prompt.append(" criterion, review the ");
    prompt.append(case_kind);
    prompt.append(" of the ");
    prompt.append(system_name);
    prompt.append(
        ". Once finished display the results accordingly as to how the review should be "
        "conducted.");
    return prompt;
}

PromptBundle compile(const AssuranceCase& ac, std::string_view case_kind, Criterion criterion,
                     Strategy strategy, const std::optional<OneShotExample>& example,
                     const CompileOptions& options) {
    return compile_from_prose(serialize_prose(ac), case_kind, ac.name(), criterion, strategy,
                              example, options);
}

PromptBundle compile_from_prose(std::string_view case_prose, std::string_view case_kind,
                                std::string_view system_name, Criterion criterion,
                                Strategy strategy, const std::optional<OneShotExample>& example,
                                const CompileOptions& options) {
    PromptBundle bundle;
    bundle.system_prompt = compile_system_prompt(case_prose, criterion, strategy, example, options);
    bundle.user_prompt = compile_user_prompt(case_kind, system_name, criterion);
    bundle.fingerprint = sha256_hex(bundle.system_prompt + "\n" + bundle.user_prompt);
    return bundle;
}

std::string bundle_to_json(const PromptBundle& bundle) {
    nlohmann::json doc{{"system", bundle.system_prompt},
                       {"user", bundle.user_prompt},
                       {"fingerprint", bundle.fingerprint}};
    return doc.dump(2);
}

std::string_view criterion_token(Criterion criterion) {
    switch (criterion) {
        case Criterion::ArgumentComprehension: return "arg-comp";
        case Criterion::WellFormedness: return "well-formed";
        case Criterion::ExpressiveSufficiency: return "expr-suff";
        case Criterion::ArgumentCriticismAndDefeat: return "arg-crit";
    }
    return {};
}

std::string_view strategy_token(Strategy strategy) {
    switch (strategy) {
        case Strategy::ZeroShot: return "zs";
        case Strategy::ZeroShotCoT: return "zs-cot";
        case Strategy::OneShotCoT: return "os-cot";
    }
    return {};
}

std::optional<Criterion> criterion_from_token(std::string_view token) {
    for (Criterion c : kAllCriteria) {
        if (criterion_token(c) == token) return c;
    }
    return std::nullopt;
}

std::optional<Strategy> strategy_from_token(std::string_view token) {
    for (Strategy s : kAllStrategies) {
        if (strategy_token(s) == token) return s;
    }
    return std::nullopt;
}

}  // namespace gsnrev
