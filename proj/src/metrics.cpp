#include "gsnrev/metrics.hpp"

#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gsnrev {

namespace {

void check_rating_range(int value, const char* what) {
    if (value < 1 || value > kRatingCategories) {
        throw std::invalid_argument(std::string(what) + " outside 1.." +
                                    std::to_string(kRatingCategories) + ": " +
                                    std::to_string(value));
    }
}

std::string format_mean(double mean) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", mean);
    return buffer;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

int parse_rating_field(const std::string& field, const char* what) {
    std::size_t consumed = 0;
    int value = 0;
    try {
        value = std::stoi(field, &consumed);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("ratings CSV: bad ") + what + " value '" + field + "'");
    }
    if (consumed != field.size()) {
        throw std::runtime_error(std::string("ratings CSV: bad ") + what + " value '" + field + "'");
    }
    check_rating_range(value, what);
    return value;
}

}  // namespace

AggregateTable aggregate_mean(const std::vector<Sample>& samples) {
    AggregateTable table;
    for (const Sample& sample : samples) {
        check_rating_range(sample.value, "sample value");
        AggregateCell& cell =
            table.cells[GroupKey{sample.llm, sample.strategy, sample.criterion, sample.metric}];
        cell.sum += sample.value;
        cell.count += 1;
    }
    return table;
}

RatingMatrix build_rating_matrix(const std::map<std::string, std::vector<int>>& scores) {
    RatingMatrix matrix;
    for (const auto& [subject, rater_scores] : scores) {
        if (matrix.counts.empty()) {
            matrix.raters_per_subject = static_cast<int>(rater_scores.size());
            if (matrix.raters_per_subject < 2) {
                throw std::invalid_argument("rating matrix needs at least 2 raters per subject");
            }
        } else if (static_cast<int>(rater_scores.size()) != matrix.raters_per_subject) {
            throw std::invalid_argument("ragged rater counts: subject '" + subject + "' has " +
                                        std::to_string(rater_scores.size()) + " scores, expected " +
                                        std::to_string(matrix.raters_per_subject));
        }
        std::array<int, kRatingCategories> row{};
        for (int score : rater_scores) {
            check_rating_range(score, "rater score");
            ++row[score - 1];
        }
        matrix.counts.push_back(row);
    }
    return matrix;
}

std::optional<double> fleiss_kappa(const RatingMatrix& matrix) {
    const std::int64_t subjects = static_cast<std::int64_t>(matrix.counts.size());
    const std::int64_t raters = matrix.raters_per_subject;
    if (subjects < 1 || raters < 2) {
        throw std::invalid_argument("fleiss_kappa needs N >= 1 subjects and n >= 2 raters");
    }

    std::int64_t sum_squares = 0;  // sum over i,j of n_ij^2
    std::array<std::int64_t, kRatingCategories> column_sums{};
    for (const auto& row : matrix.counts) {
        std::int64_t row_sum = 0;
        for (int j = 0; j < kRatingCategories; ++j) {
            const std::int64_t count = row[j];
            if (count < 0) throw std::invalid_argument("negative matrix entry");
            sum_squares += count * count;
            column_sums[j] += count;
            row_sum += count;
        }
        if (row_sum != raters) {
            throw std::invalid_argument("matrix row does not sum to the rater count");
        }
    }

    const std::int64_t total = subjects * raters;
    std::int64_t column_square_sum = 0;
    for (std::int64_t c : column_sums) column_square_sum += c * c;
    // 1 - P_bar_e == 0 exactly when one category holds every rating; decided
    // on integers so no float-equality test is needed.
    if (column_square_sum == total * total) return std::nullopt;

    const double p_bar = static_cast<double>(sum_squares - total) /
                         (static_cast<double>(total) * static_cast<double>(raters - 1));
    const double p_bar_e = static_cast<double>(column_square_sum) /
                           (static_cast<double>(total) * static_cast<double>(total));
    return (p_bar - p_bar_e) / (1.0 - p_bar_e);
}

std::string export_table(const AggregateTable& table, TableFormat format) {
    std::string out;
    if (format == TableFormat::Csv) {
        out = "llm,strategy,criterion,metric,mean,count\n";
        for (const auto& [key, cell] : table.cells) {
            out += key.llm + "," + key.strategy + "," + key.criterion + "," + key.metric + "," +
                   format_mean(cell.mean()) + "," + std::to_string(cell.count) + "\n";
        }
        return out;
    }
    out = "| llm | strategy | criterion | metric | mean | count |\n";
    out += "| --- | --- | --- | --- | --- | --- |\n";
    for (const auto& [key, cell] : table.cells) {
        out += "| " + key.llm + " | " + key.strategy + " | " + key.criterion + " | " + key.metric +
               " | " + format_mean(cell.mean()) + " | " + std::to_string(cell.count) + " |\n";
    }
    return out;
}

std::string export_kappa_csv(const std::vector<KappaRow>& rows) {
    std::string out = "criterion,strategy,kappa\n";
    for (const KappaRow& row : rows) {
        out += row.criterion + "," + row.strategy + "," +
               (row.kappa ? format_mean(*row.kappa) : "undefined") + "\n";
    }
    return out;
}

std::string export_kappa_markdown(const std::vector<KappaRow>& rows) {
    std::string out = "| criterion | strategy | kappa |\n| --- | --- | --- |\n";
    for (const KappaRow& row : rows) {
        out += "| " + row.criterion + " | " + row.strategy + " | " +
               (row.kappa ? format_mean(*row.kappa) : "undefined") + " |\n";
    }
    return out;
}

std::vector<AssessorRating> parse_ratings_csv(std::string_view text) {
    std::vector<AssessorRating> ratings;
    std::set<std::pair<std::string, std::string>> seen;
    std::istringstream stream{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "record_id,assessor_id,informativeness,coherence,usefulness") {
                throw std::runtime_error("ratings CSV: unexpected header '" + line + "'");
            }
            continue;
        }
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw std::runtime_error("ratings CSV: line " + std::to_string(line_no) +
                                     " has " + std::to_string(fields.size()) +
                                     " fields, expected 5");
        }
        AssessorRating rating;
        rating.record_id = fields[0];
        rating.assessor_id = fields[1];
        rating.informativeness = parse_rating_field(fields[2], "informativeness");
        rating.coherence = parse_rating_field(fields[3], "coherence");
        rating.usefulness = parse_rating_field(fields[4], "usefulness");
        if (!seen.insert({rating.record_id, rating.assessor_id}).second) {
            throw std::runtime_error("ratings CSV: duplicate (record_id, assessor_id) pair (" +
                                     rating.record_id + ", " + rating.assessor_id + ")");
        }
        ratings.push_back(std::move(rating));
    }
    return ratings;
}

}  // namespace gsnrev
