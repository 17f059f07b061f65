#include "gsnrev/prose.hpp"

#include <cctype>

namespace gsnrev {

namespace {

bool is_label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
}

// Any alphanumeric token of label shape; prefix validity is checked separately
// so unknown prefixes can still parse (as Goals) and be flagged downstream.
bool is_label_token(std::string_view token) {
    if (token.empty() || !std::isalpha(static_cast<unsigned char>(token[0]))) return false;
    for (char c : token) {
        if (!is_label_char(c)) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct LogicalLine {
    std::string text;
    int line_no = 1;  // first physical line
};

// Joins backslash-continued physical lines; the continuation break is kept as
// a newline inside the statement text.
std::vector<LogicalLine> logical_lines(std::string_view text) {
    std::vector<LogicalLine> out;
    std::size_t pos = 0;
    int line_no = 1;
    while (pos < text.size()) {
        LogicalLine current{{}, line_no};
        for (;;) {
            std::size_t eol = text.find('\n', pos);
            const bool has_newline = eol != std::string_view::npos;
            std::string_view phys =
                text.substr(pos, has_newline ? eol - pos : std::string_view::npos);
            if (!phys.empty() && phys.back() == '\r') phys.remove_suffix(1);
            pos = has_newline ? eol + 1 : text.size();
            ++line_no;
            if (!phys.empty() && phys.back() == '\\') {
                phys.remove_suffix(1);
                current.text.append(phys);
                if (!has_newline || pos >= text.size()) break;  // dangling continuation at EOF
                current.text.push_back('\n');
                continue;
            }
            current.text.append(phys);
            break;
        }
        out.push_back(std::move(current));
    }
    return out;
}

struct Parser {
    AssuranceCase ac;
    std::vector<ParseDiagnostic> diagnostics;

    void warn(int line, std::string msg) {
        diagnostics.push_back({line, Severity::Warning, std::move(msg)});
    }
    void error(int line, std::string msg) {
        diagnostics.push_back({line, Severity::Error, std::move(msg)});
    }

    Endpoint endpoint_for(std::string_view label, int line) {
        if (auto h = ac.find_last(label)) return Endpoint::resolved(*h);
        warn(line, "reference to undeclared element '" + std::string(label) + "'");
        return Endpoint::unresolved(std::string(label));
    }

    void add_edges(std::string_view src, std::string_view targets, RelationKind kind, int line) {
        Endpoint from = endpoint_for(src, line);
        std::size_t start = 0;
        while (start <= targets.size()) {
            std::size_t comma = targets.find(',', start);
            std::string_view target = targets.substr(
                start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            target = trim(target);
            if (!is_label_token(target)) {
                error(line, "malformed relationship target '" + std::string(target) + "'");
            } else {
                ac.add_relationship(from, endpoint_for(target, line), kind);
            }
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }

    void handle(const LogicalLine& line) {
        std::string_view s = trim(line.text);
        if (s.empty() || s.front() == '#') return;

        // Element declaration: LABEL ":" SP TEXT. The token before the colon
        // must be label-shaped, which keeps colons inside statement text from
        // being mistaken for declarations.
        std::size_t colon = s.find(':');
        std::size_t label_end = 0;
        while (label_end < s.size() && is_label_char(s[label_end])) ++label_end;
        if (colon != std::string_view::npos && colon == label_end && colon > 0) {
            std::string_view label = s.substr(0, colon);
            std::string_view text = s.substr(colon + 1);
            if (!text.empty() && text.front() == ' ') text.remove_prefix(1);
            if (!is_label_token(label)) {
                error(line.line_no, "malformed element label '" + std::string(label) + "'");
                return;
            }
            auto kind = kind_from_label(label);
            if (!kind) {
                warn(line.line_no, "label '" + std::string(label) +
                                       "' has no recognized GSN prefix; treating it as a Goal");
                kind = ElementKind::Goal;
            }
            ac.add_element(label, *kind, text, false);
            return;
        }

        // Relationship or decorator: "LABEL <phrase> ...".
        std::size_t sp = s.find(' ');
        if (sp == std::string_view::npos || !is_label_token(s.substr(0, sp))) {
            error(line.line_no, "unparseable line: '" + std::string(s) + "'");
            return;
        }
        std::string_view label = s.substr(0, sp);
        std::string_view rest = s.substr(sp + 1);

        if (rest == "is undeveloped") {
            auto h = ac.find_last(label);
            if (!h) {
                warn(line.line_no,
                     "undeveloped decorator on undeclared element '" + std::string(label) + "'");
                return;
            }
            const GsnElement& el = ac.element(*h);
            if (el.kind != ElementKind::Goal && el.kind != ElementKind::Strategy) {
                error(line.line_no, "undeveloped decorator on " + std::string(kind_name(el.kind)) +
                                        " '" + std::string(label) + "'");
                return;
            }
            ac.set_undeveloped(*h, true);
            return;
        }
        if (rest.starts_with("is supported by ")) {
            add_edges(label, rest.substr(16), RelationKind::SupportedBy, line.line_no);
            return;
        }
        if (rest.starts_with("is in the context of ")) {
            add_edges(label, rest.substr(21), RelationKind::InContextOf, line.line_no);
            return;
        }
        if (rest.starts_with("challenges ")) {
            add_edges(label, rest.substr(11), RelationKind::Challenges, line.line_no);
            return;
        }
        if (rest.starts_with("is defeated by ")) {
            add_edges(label, rest.substr(15), RelationKind::Defeated, line.line_no);
            return;
        }
        error(line.line_no, "unparseable line: '" + std::string(s) + "'");
    }
};

std::string_view relation_phrase(RelationKind kind) {
    switch (kind) {
        case RelationKind::SupportedBy: return "is supported by";
        case RelationKind::InContextOf: return "is in the context of";
        case RelationKind::Challenges: return "challenges";
        case RelationKind::Defeated: return "is defeated by";
    }
    return "is supported by";
}

// Statement text with embedded newlines becomes backslash continuations.
void append_escaped(std::string& out, std::string_view text) {
    for (char c : text) {
        if (c == '\n') {
            out.push_back('\\');
            out.push_back('\n');
        } else {
            out.push_back(c);
        }
    }
}

}  // namespace

bool is_valid_label(std::string_view token) {
    return is_label_token(token) && kind_from_label(token).has_value();
}

ParseResult parse_prose(std::string_view text, std::string_view case_name) {
    Parser parser;
    parser.ac.set_name(std::string(case_name));
    for (const LogicalLine& line : logical_lines(text)) {
        parser.handle(line);
    }
    return ParseResult{std::move(parser.ac), std::move(parser.diagnostics)};
}

std::string serialize_prose(const AssuranceCase& ac) {
    std::string out;
    for (const GsnElement& el : ac.elements()) {
        out.append(el.label);
        out.push_back(':');
        if (!el.text.empty()) {
            out.push_back(' ');
            append_escaped(out, el.text);
        }
        out.push_back('\n');
        if (el.undeveloped) {
            out.append(el.label);
            out.append(" is undeveloped\n");
        }
    }
    for (const Relationship& rel : ac.relationships()) {
        out.append(ac.endpoint_label(rel.src));
        out.push_back(' ');
        out.append(relation_phrase(rel.kind));
        out.push_back(' ');
        out.append(ac.endpoint_label(rel.dst));
        out.push_back('\n');
    }
    return out;
}

}  // namespace gsnrev
