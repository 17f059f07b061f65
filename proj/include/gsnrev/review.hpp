// Tolerant recovery of the 1-5 score and the predicate-notation findings
// from raw LLM review text.
//
// Recognized forms: Issue(E, D), Description(I(n), E, ID),
// Suggest(I(n), E, Sg), Structural(E, D), Defeater/Defeaters(D(n), Df[, De])
// and <(E(1), IDEN(1), E(2), IDEN(2), ...)> duplicate groups. Argument
// splitting happens at top-level commas only (parentheses nest, quotes
// suppress splitting); the last field of a fixed-arity form is greedy and
// absorbs any remaining commas. Text that resembles a form but fails its
// arity degrades to a FreeTextFinding rather than being dropped.

#ifndef GSNREV_REVIEW_HPP
#define GSNREV_REVIEW_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gsnrev {

struct IssueFinding {
    std::string element_label;  // E
    std::string text;           // D
    friend bool operator==(const IssueFinding&, const IssueFinding&) = default;
};

struct DescriptionFinding {
    std::string issue_no;       // I(n)
    std::string element_label;  // E
    std::string text;           // ID
    friend bool operator==(const DescriptionFinding&, const DescriptionFinding&) = default;
};

struct SuggestionFinding {
    std::string issue_no;       // I(n)
    std::string element_label;  // E
    std::string text;           // Sg
    friend bool operator==(const SuggestionFinding&, const SuggestionFinding&) = default;
};

struct DuplicateGroupEntry {
    std::string label;  // E(n)
    std::string text;   // IDEN(n)
    friend bool operator==(const DuplicateGroupEntry&, const DuplicateGroupEntry&) = default;
};

struct DuplicateGroupFinding {
    std::vector<DuplicateGroupEntry> entries;  // >= 2
    friend bool operator==(const DuplicateGroupFinding&, const DuplicateGroupFinding&) = default;
};

struct StructuralFinding {
    std::string element_label;  // E
    std::string text;           // D
    friend bool operator==(const StructuralFinding&, const StructuralFinding&) = default;
};

struct DefeaterFinding {
    std::string defeater_no;                  // D(n)
    std::string text;                         // Df
    std::optional<std::string> target_label;  // De, optional (2-argument form)
    friend bool operator==(const DefeaterFinding&, const DefeaterFinding&) = default;
};

struct FreeTextFinding {
    std::string text;
    friend bool operator==(const FreeTextFinding&, const FreeTextFinding&) = default;
};

using Finding = std::variant<IssueFinding, DescriptionFinding, SuggestionFinding,
                             DuplicateGroupFinding, StructuralFinding, DefeaterFinding,
                             FreeTextFinding>;

struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;  // exclusive
    friend bool operator==(SourceSpan, SourceSpan) = default;
};

struct ParsedReview {
    std::optional<int> score;       // in 1..5 when present
    std::vector<Finding> findings;  // source order
    // Sorted, disjoint; consumed + unparsed always reconstructs [0, len)
    // exactly.
    std::vector<SourceSpan> consumed_spans;
    std::vector<SourceSpan> unparsed_spans;
};

// First match among, in priority order: "Score: N", "score of N", "N/5",
// "rate ... N" with N in 1..5. Absence is a value, not an error.
std::optional<int> extract_score(std::string_view text);

std::vector<Finding> parse_findings(std::string_view text);

// Combines extract_score and parse_findings; spans consumed by neither are
// recorded in unparsed_spans, so consumed + unparsed always partitions the
// input exactly. A non-empty input with no score and no notation collapses
// to a single FreeTextFinding covering everything.
ParsedReview parse_review(std::string_view text);

// Canonical Table-2 notation for a finding; FreeTextFinding renders as its
// raw text. render/parse round-trips for every other variant.
std::string render_finding(const Finding& finding);

std::string review_to_json(const ParsedReview& review);

}  // namespace gsnrev

#endif  // GSNREV_REVIEW_HPP
