// Aggregate statistics over review scores and human-assessor ratings:
// grouped means (the review-rating table shapes), the subjects-by-categories
// rating matrix, and Fleiss' kappa inter-rater agreement.

#ifndef GSNREV_METRICS_HPP
#define GSNREV_METRICS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gsnrev {

inline constexpr int kRatingCategories = 5;  // the 1..5 linear scale

struct AssessorRating {
    std::string record_id;
    std::string assessor_id;
    int informativeness = 1;
    int coherence = 1;
    int usefulness = 1;
};

// N subjects x 5 categories count matrix; every row sums to
// raters_per_subject.
struct RatingMatrix {
    std::vector<std::array<int, kRatingCategories>> counts;
    int raters_per_subject = 0;
};

struct Sample {
    std::string llm;
    std::string strategy;
    std::string criterion;
    std::string metric;
    int value = 1;  // in 1..5
};

struct GroupKey {
    std::string llm;
    std::string strategy;
    std::string criterion;
    std::string metric;
    friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
};

// Exact sums internally; the mean is only rendered (rounded) at export.
struct AggregateCell {
    std::int64_t sum = 0;
    std::int64_t count = 0;
    double mean() const { return static_cast<double>(sum) / static_cast<double>(count); }
};

struct AggregateTable {
    std::map<GroupKey, AggregateCell> cells;
};

// Arithmetic mean per group; throws std::invalid_argument on values outside
// 1..5. Groups with zero members simply do not appear.
AggregateTable aggregate_mean(const std::vector<Sample>& samples);

// subject -> the n rater scores for it; throws on ragged rater counts or
// out-of-range scores.
RatingMatrix build_rating_matrix(const std::map<std::string, std::vector<int>>& scores);

// kappa = (P_bar - P_bar_e) / (1 - P_bar_e); empty optional when the
// denominator is zero (all raters in one category everywhere).
std::optional<double> fleiss_kappa(const RatingMatrix& matrix);

enum class TableFormat { Csv, Markdown };

// Deterministic column order (llm, strategy, criterion, metric, mean, count);
// means rendered with 4 decimal places.
std::string export_table(const AggregateTable& table, TableFormat format);

struct KappaRow {
    std::string criterion;
    std::string strategy;
    std::optional<double> kappa;
};

// CSV rows criterion,strategy,kappa with "undefined" for the degenerate case.
std::string export_kappa_csv(const std::vector<KappaRow>& rows);
std::string export_kappa_markdown(const std::vector<KappaRow>& rows);

// Ratings CSV with header record_id,assessor_id,informativeness,coherence,
// usefulness. Throws std::runtime_error on malformed input or invariant
// violations (out-of-range rating, duplicate (record_id, assessor_id)).
std::vector<AssessorRating> parse_ratings_csv(std::string_view text);

}  // namespace gsnrev

#endif  // GSNREV_METRICS_HPP
