#include "gsnrev/review.hpp"

#include <algorithm>
#include <regex>

#include <json.hpp>

#include "gsnrev/prose.hpp"

namespace gsnrev {

namespace {

// ── Top-level argument scanning ─────────────────────────────────────────────
// Commas split arguments only at parenthesis depth zero and outside quotes.
// Straight and typographic double quotes all toggle the quote state, which
// keeps groups like <(G6, “..., “ is appropriate)> splitting correctly even
// when the model mismatches opening/closing glyphs.

bool quote_at(std::string_view text, std::size_t pos, std::size_t& len) {
    if (text[pos] == '"') {
        len = 1;
        return true;
    }
    if (pos + 2 < text.size() && static_cast<unsigned char>(text[pos]) == 0xE2 &&
        static_cast<unsigned char>(text[pos + 1]) == 0x80 &&
        (static_cast<unsigned char>(text[pos + 2]) == 0x9C ||
         static_cast<unsigned char>(text[pos + 2]) == 0x9D)) {
        len = 3;
        return true;
    }
    return false;
}

struct FormBody {
    std::size_t inner_begin = 0;
    std::size_t inner_end = 0;              // exclusive, position of closing ')'
    std::size_t close_end = 0;              // one past ')' or ')>'
    std::vector<std::size_t> comma_offsets; // top-level commas, absolute positions
};

// Scans from an opening '(' for the matching close. Returns false when the
// text ends first.
bool scan_form_body(std::string_view text, std::size_t open_paren, bool angle, FormBody& out) {
    int depth = 1;
    bool in_quote = false;
    std::size_t pos = open_paren + 1;
    out.inner_begin = pos;
    while (pos < text.size()) {
        std::size_t qlen = 0;
        if (quote_at(text, pos, qlen)) {
            in_quote = !in_quote;
            pos += qlen;
            continue;
        }
        const char c = text[pos];
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
            if (depth == 0) {
                out.inner_end = pos;
                out.close_end = pos + 1;
                if (angle) {
                    if (out.close_end < text.size() && text[out.close_end] == '>') {
                        ++out.close_end;
                        return true;
                    }
                    return false;  // "<(...)" without ">"
                }
                return true;
            }
        } else if (c == ',' && depth == 1 && !in_quote) {
            out.comma_offsets.push_back(pos);
        }
        ++pos;
    }
    return false;
}

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' ||
                          s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() &&
           (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

struct SpannedFinding {
    Finding finding;
    SourceSpan span;
};

enum class Head { Issue, Description, Suggest, Structural, Defeater, Group };

struct HeadMatch {
    Head head;
    std::size_t open_paren;  // position of '('
};

// Longest spellings first so "Defeaters(" is not consumed as "Defeater" + "s(".
constexpr std::pair<std::string_view, Head> kHeads[] = {
    {"Description", Head::Description}, {"Structural", Head::Structural},
    {"Defeaters", Head::Defeater},      {"Defeater", Head::Defeater},
    {"Suggest", Head::Suggest},         {"Issue", Head::Issue},
};

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::optional<HeadMatch> match_head(std::string_view text, std::size_t pos) {
    if (text.compare(pos, 2, "<(") == 0) {
        return HeadMatch{Head::Group, pos + 1};
    }
    if (pos > 0 && is_word_char(text[pos - 1])) return std::nullopt;
    for (const auto& [name, head] : kHeads) {
        if (text.compare(pos, name.size(), name) == 0 && pos + name.size() < text.size() &&
            text[pos + name.size()] == '(') {
            return HeadMatch{head, pos + name.size()};
        }
    }
    return std::nullopt;
}

std::size_t end_of_line(std::string_view text, std::size_t pos) {
    const std::size_t nl = text.find('\n', pos);
    return nl == std::string_view::npos ? text.size() : nl;
}

// Builds the typed finding from a balanced form body, or a FreeTextFinding
// over the whole span when the shape does not fit.
Finding build_finding(std::string_view text, Head head, std::size_t head_begin,
                      const FormBody& body) {
    const auto raw = [&](std::size_t from, std::size_t to) {
        return std::string(trim_view(text.substr(from, to - from)));
    };
    const auto segment = [&](std::size_t i) {
        const std::size_t from = i == 0 ? body.inner_begin : body.comma_offsets[i - 1] + 1;
        const std::size_t to =
            i < body.comma_offsets.size() ? body.comma_offsets[i] : body.inner_end;
        return raw(from, to);
    };
    const std::size_t n_segments = body.comma_offsets.size() + 1;
    const auto degrade = [&]() -> Finding {
        return FreeTextFinding{std::string(text.substr(head_begin, body.close_end - head_begin))};
    };

    switch (head) {
        case Head::Issue:
        case Head::Structural: {
            if (n_segments < 2 || segment(0).empty()) return degrade();
            std::string tail = raw(body.comma_offsets[0] + 1, body.inner_end);
            if (head == Head::Issue) return IssueFinding{segment(0), std::move(tail)};
            return StructuralFinding{segment(0), std::move(tail)};
        }
        case Head::Description:
        case Head::Suggest: {
            if (n_segments < 3 || segment(0).empty() || segment(1).empty()) return degrade();
            std::string tail = raw(body.comma_offsets[1] + 1, body.inner_end);
            if (head == Head::Description) {
                return DescriptionFinding{segment(0), segment(1), std::move(tail)};
            }
            return SuggestionFinding{segment(0), segment(1), std::move(tail)};
        }
        case Head::Defeater: {
            if (n_segments < 2 || segment(0).empty()) return degrade();
            DefeaterFinding finding;
            finding.defeater_no = segment(0);
            std::string last = segment(n_segments - 1);
            if (n_segments >= 3 && is_valid_label(last)) {
                finding.target_label = std::move(last);
                finding.text = raw(body.comma_offsets[0] + 1, body.comma_offsets.back());
            } else {
                finding.text = raw(body.comma_offsets[0] + 1, body.inner_end);
            }
            return finding;
        }
        case Head::Group: {
            if (n_segments < 4 || n_segments % 2 != 0) return degrade();
            DuplicateGroupFinding group;
            for (std::size_t i = 0; i < n_segments; i += 2) {
                group.entries.push_back({segment(i), segment(i + 1)});
            }
            return group;
        }
    }
    return degrade();
}

std::vector<SpannedFinding> scan_findings(std::string_view text) {
    std::vector<SpannedFinding> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto head = match_head(text, pos);
        if (!head) {
            ++pos;
            continue;
        }
        FormBody body;
        const bool angle = head->head == Head::Group;
        if (!scan_form_body(text, head->open_paren, angle, body)) {
            // Unterminated form: keep the rest of the line as free text so
            // later lines still parse.
            const std::size_t eol = end_of_line(text, pos);
            out.push_back({FreeTextFinding{std::string(text.substr(pos, eol - pos))},
                           SourceSpan{pos, eol}});
            pos = eol;
            continue;
        }
        out.push_back({build_finding(text, head->head, pos, body), SourceSpan{pos, body.close_end}});
        pos = body.close_end;
    }
    return out;
}

// ── Score extraction ────────────────────────────────────────────────────────
// The templates mandate no output format, so this is a frozen heuristic:
// the four patterns below are tried in priority order and the first match
// wins. Matches never span lines.

struct ScoreMatch {
    int value = 0;
    SourceSpan span;
};

const std::regex kScorePatterns[] = {
    std::regex(R"(\bscore[ \t]*:[ \t]*([1-5])\b)", std::regex::icase),
    std::regex(R"(\bscore of[ \t]+([1-5])\b)", std::regex::icase),
    std::regex(R"(\b([1-5])[ \t]*/[ \t]*5\b)"),
    std::regex(R"(\brat(?:e|ed|es|ing)\b[^0-9\n]{0,60}?([1-5])\b)", std::regex::icase),
};

std::optional<ScoreMatch> find_score(std::string_view text) {
    for (const std::regex& pattern : kScorePatterns) {
        std::cmatch match;
        if (std::regex_search(text.begin(), text.end(), match, pattern)) {
            ScoreMatch result;
            result.value = match[1].first[0] - '0';
            result.span.begin = static_cast<std::size_t>(match[0].first - text.begin());
            result.span.end = static_cast<std::size_t>(match[0].second - text.begin());
            return result;
        }
    }
    return std::nullopt;
}

bool contains(SourceSpan outer, SourceSpan inner) {
    return outer.begin <= inner.begin && inner.end <= outer.end;
}

nlohmann::json finding_to_json(const Finding& finding) {
    using nlohmann::json;
    return std::visit(
        [](const auto& f) -> json {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, IssueFinding>) {
                return {{"variant", "issue"}, {"element_label", f.element_label}, {"text", f.text}};
            } else if constexpr (std::is_same_v<T, DescriptionFinding>) {
                return {{"variant", "description"},
                        {"issue_no", f.issue_no},
                        {"element_label", f.element_label},
                        {"text", f.text}};
            } else if constexpr (std::is_same_v<T, SuggestionFinding>) {
                return {{"variant", "suggestion"},
                        {"issue_no", f.issue_no},
                        {"element_label", f.element_label},
                        {"text", f.text}};
            } else if constexpr (std::is_same_v<T, DuplicateGroupFinding>) {
                json entries = json::array();
                for (const DuplicateGroupEntry& e : f.entries) {
                    entries.push_back({{"label", e.label}, {"text", e.text}});
                }
                return {{"variant", "duplicate-group"}, {"entries", entries}};
            } else if constexpr (std::is_same_v<T, StructuralFinding>) {
                return {{"variant", "structural"},
                        {"element_label", f.element_label},
                        {"text", f.text}};
            } else if constexpr (std::is_same_v<T, DefeaterFinding>) {
                json doc{{"variant", "defeater"}, {"defeater_no", f.defeater_no}, {"text", f.text}};
                if (f.target_label) doc["target_label"] = *f.target_label;
                return doc;
            } else {
                static_assert(std::is_same_v<T, FreeTextFinding>);
                return {{"variant", "free-text"}, {"text", f.text}};
            }
        },
        finding);
}

}  // namespace

std::optional<int> extract_score(std::string_view text) {
    if (auto match = find_score(text)) return match->value;
    return std::nullopt;
}

std::vector<Finding> parse_findings(std::string_view text) {
    std::vector<Finding> out;
    for (SpannedFinding& spanned : scan_findings(text)) {
        out.push_back(std::move(spanned.finding));
    }
    return out;
}

ParsedReview parse_review(std::string_view text) {
    ParsedReview review;
    if (text.empty()) return review;

    std::vector<SpannedFinding> spanned = scan_findings(text);
    const std::optional<ScoreMatch> score = find_score(text);
    if (score) review.score = score->value;

    if (spanned.empty() && !score) {
        // Pure narrative: keep everything as one free-text finding.
        review.findings.push_back(FreeTextFinding{std::string(text)});
        review.consumed_spans.push_back({0, text.size()});
        return review;
    }

    for (SpannedFinding& s : spanned) {
        review.findings.push_back(std::move(s.finding));
        review.consumed_spans.push_back(s.span);
    }
    if (score) {
        const bool inside_finding = std::any_of(
            review.consumed_spans.begin(), review.consumed_spans.end(),
            [&](SourceSpan span) { return contains(span, score->span); });
        if (!inside_finding) review.consumed_spans.push_back(score->span);
    }
    std::sort(review.consumed_spans.begin(), review.consumed_spans.end(),
              [](SourceSpan a, SourceSpan b) { return a.begin < b.begin; });

    std::size_t cursor = 0;
    for (SourceSpan span : review.consumed_spans) {
        if (span.begin > cursor) review.unparsed_spans.push_back({cursor, span.begin});
        cursor = std::max(cursor, span.end);
    }
    if (cursor < text.size()) review.unparsed_spans.push_back({cursor, text.size()});
    return review;
}

std::string render_finding(const Finding& finding) {
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, IssueFinding>) {
                return "Issue(" + f.element_label + ", " + f.text + ")";
            } else if constexpr (std::is_same_v<T, DescriptionFinding>) {
                return "Description(" + f.issue_no + ", " + f.element_label + ", " + f.text + ")";
            } else if constexpr (std::is_same_v<T, SuggestionFinding>) {
                return "Suggest(" + f.issue_no + ", " + f.element_label + ", " + f.text + ")";
            } else if constexpr (std::is_same_v<T, DuplicateGroupFinding>) {
                std::string out = "<(";
                bool first = true;
                for (const DuplicateGroupEntry& e : f.entries) {
                    if (!first) out += ", ";
                    first = false;
                    out += e.label + ", " + e.text;
                }
                return out + ")>";
            } else if constexpr (std::is_same_v<T, StructuralFinding>) {
                return "Structural(" + f.element_label + ", " + f.text + ")";
            } else if constexpr (std::is_same_v<T, DefeaterFinding>) {
                std::string out = "Defeaters(" + f.defeater_no + ", " + f.text;
                if (f.target_label) out += ", " + *f.target_label;
                return out + ")";
            } else {
                static_assert(std::is_same_v<T, FreeTextFinding>);
                return f.text;
            }
        },
        finding);
}

std::string review_to_json(const ParsedReview& review) {
    nlohmann::json doc;
    doc["score"] = review.score ? nlohmann::json(*review.score) : nlohmann::json(nullptr);
    nlohmann::json findings = nlohmann::json::array();
    for (const Finding& finding : review.findings) {
        findings.push_back(finding_to_json(finding));
    }
    doc["findings"] = findings;
    nlohmann::json unparsed = nlohmann::json::array();
    for (SourceSpan span : review.unparsed_spans) {
        unparsed.push_back({{"start", span.begin}, {"end", span.end}});
    }
    doc["unparsed"] = unparsed;
    return doc.dump(2);
}

}  // namespace gsnrev
